// Benchmark comparing the OpenMP kernels against their serial reference
// implementations (the references stay in the library as the test oracles).

#include <chrono>
#include <cstdio>
#include <random>

#include "svcalc/parallel.hpp"
#include "svcalc/setrep.hpp"
#include "svcalc/svmap.hpp"

using namespace svcalc;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool same) {
  std::printf("%-24s %10.2f ms %10.2f ms   x%.2f   results %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, same ? "identical" : "DIFFER");
}

}  // namespace

int main() {
  std::printf("threads: %s\n\n", kParallelEnabled ? "OpenMP" : "serial build");
  std::printf("%-24s %13s %13s\n", "kernel", "serial", "parallel");

  {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SampledSet a, b;
    a.dim = b.dim = 2;
    a.pitch = b.pitch = 0.01;
    for (int i = 0; i < 2500; ++i) a.points.push_back({u(rng), u(rng)});
    for (int i = 0; i < 2500; ++i) b.points.push_back({u(rng), u(rng)});
    double hs = 0.0, hp = 0.0;
    const double ts = time_ms([&] { hs = hausdorff_serial(a, b); });
    const double tp = time_ms([&] { hp = hausdorff_parallel(a, b); });
    row("hausdorff 2500x2500", ts, tp, hs == hp);
  }

  {
    SetPlot p = interval_map([](double r) { return std::sin(3.0 * r); },
                             [](double r) { return std::cos(2.0 * r); },
                             ParamDomain::line(-3.0, 3.0, 20001));
    std::vector<OpenBox> opens{OpenBox{Box(Interval(0.4, 0.6))},
                               OpenBox{Box(Interval(-0.9, -0.2))},
                               OpenBox{Box(Interval(0.0, 0.1))}};
    LscReport rs, rp;
    const double ts = time_ms([&] { rs = lsc_check_serial(p, opens); });
    const double tp = time_ms([&] { rp = lsc_check_parallel(p, opens); });
    const bool same = rs.violations.size() == rp.violations.size() &&
                      rs.boundary_misses.size() == rp.boundary_misses.size();
    row("lsc sweep 20001 pts", ts, tp, same);
  }

  return 0;
}
