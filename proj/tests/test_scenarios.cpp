#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "svcalc/scenarios.hpp"

using namespace svcalc;

TEST_CASE("every named scenario passes with default config") {
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    Verdict v = run_scenario(name);
    CHECK(v.pass);
    CHECK(v.name == name);
    CHECK_FALSE(v.narrative.empty());
    CHECK(v.details.contains("target_source"));
  }
}

TEST_CASE("unknown scenario names list the valid ones") {
  try {
    run_scenario("does-not-exist");
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    for (const auto& name : scenario_names())
      CHECK(msg.find(name) != std::string::npos);
  }
}

TEST_CASE("verdicts are deterministic for a fixed config") {
  for (const auto& name : {"traveling-interval", "gaussian-fomin", "multideriv-family"}) {
    Verdict a = run_scenario(name);
    Verdict b = run_scenario(name);
    CHECK(a.details.dump() == b.details.dump());
    CHECK(a.narrative == b.narrative);
    REQUIRE(a.series.size() == b.series.size());
    for (size_t i = 0; i < a.series.size(); ++i) CHECK(a.series[i].rows == b.series[i].rows);
  }
}

TEST_CASE("tolerance overrides reach the targets") {
  ScenarioConfig strict;
  strict.tol = 1e-18;
  CHECK_FALSE(run_disk_dilation(strict).pass);  // nothing is that accurate

  ScenarioConfig loose;
  loose.tol = 0.5;
  CHECK(run_disk_dilation(loose).pass);
}

TEST_CASE("scenario sweeps respect the grid override") {
  ScenarioConfig cfg;
  cfg.grid_points = 21;
  Verdict v = run_traveling_interval(cfg);
  CHECK(v.pass);
  CHECK(v.details["grid_points"] == 21);
  REQUIRE(v.series.size() == 1);
  CHECK(v.series[0].rows.size() == 21);
}
