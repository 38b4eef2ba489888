#include "svcalc/report.hpp"

#include <fstream>
#include <sstream>

namespace svcalc {

namespace fs = std::filesystem;

void atomic_write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
  atomic_write_text(path, j.dump(2) + "\n");
}

namespace {
std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}
}  // namespace

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << "\n";
  }
  atomic_write_text(path, os.str());
}

void write_xy(const fs::path& path, const XYSeries& series) {
  std::ostringstream os;
  for (const auto& [x, y] : series.rows) os << format_double(x) << " " << format_double(y) << "\n";
  atomic_write_text(path, os.str());
}

std::vector<fs::path> emit_verdict(const fs::path& out_dir, const Verdict& v,
                                   const std::string& format) {
  std::vector<fs::path> written;
  const bool json_on = format == "json" || format == "both";
  const bool csv_on = format == "csv" || format == "both";

  if (json_on) {
    // wall-clock time stays on stdout; emitted files are bit-identical
    // across re-runs with the same config
    nlohmann::json j{{"name", v.name},
                     {"pass", v.pass},
                     {"details", v.details},
                     {"narrative", v.narrative}};
    const fs::path p = out_dir / (v.name + ".json");
    write_json_file(p, j);
    written.push_back(p);
  }
  if (csv_on) {
    for (const auto& s : v.series) {
      const fs::path p = out_dir / (v.name + "-" + s.name + ".dat");
      write_xy(p, s);
      written.push_back(p);
    }
  }
  return written;
}

}  // namespace svcalc
