#pragma once

// Report emission: atomic file writes (temp file + rename, so re-running a
// command replaces outputs whole), CSV tables, and two-column XY data files.

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "svcalc/scenarios.hpp"

namespace svcalc {

void atomic_write_text(const std::filesystem::path& path, const std::string& content);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_xy(const std::filesystem::path& path, const XYSeries& series);

// verdict JSON + one .dat file per series; returns the files written
std::vector<std::filesystem::path> emit_verdict(const std::filesystem::path& out_dir,
                                                const Verdict& v, const std::string& format);

}  // namespace svcalc
