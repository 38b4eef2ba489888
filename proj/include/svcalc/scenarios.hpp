#pragma once

// Canned, named experiments with structured verdicts. Each scenario is
// deterministic for a given config and reports measured values next to its
// targets; quantitative targets carry a source tag saying where the number
// comes from (worked-example, identity, or an independent oracle).

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "svcalc/svdiff.hpp"

namespace svcalc {

struct ScenarioConfig {
  int grid_points = 81;                 // odd counts include the sweep center exactly
  std::optional<double> tol;            // override for quantitative targets
  std::optional<DiffSchedule> schedule; // override for derivative estimates
};

struct XYSeries {
  std::string name;
  std::vector<std::array<double, 2>> rows;
};

struct Verdict {
  std::string name;
  bool pass = false;
  double runtime_ms = 0.0;
  nlohmann::json details;  // measured values, targets, tolerances, sources
  std::string narrative;   // on failure, repeats the violated expectation
  std::vector<XYSeries> series;
};

Verdict run_traveling_interval(const ScenarioConfig& cfg = {});
Verdict run_mollifier_union(const ScenarioConfig& cfg = {});
Verdict run_singleton_intersection(const ScenarioConfig& cfg = {});
Verdict run_multideriv_family(const ScenarioConfig& cfg = {});
Verdict run_disk_dilation(const ScenarioConfig& cfg = {});
Verdict run_gaussian_fomin(const ScenarioConfig& cfg = {});
Verdict run_interval_selection(const ScenarioConfig& cfg = {});

const std::vector<std::string>& scenario_names();
// Throws std::invalid_argument listing the valid names when unknown.
Verdict run_scenario(const std::string& name, const ScenarioConfig& cfg = {});

}  // namespace svcalc
