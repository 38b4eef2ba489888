#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "svcalc/svdiff.hpp"

using namespace svcalc;

namespace {
using Vec = std::vector<double>;

double xy_over_absy(const Vec& p) {
  return p[1] != 0.0 ? p[0] * p[1] / std::fabs(p[1]) : 0.0;
}

Path<Vec> parabola_path(double alpha) {
  return Path<Vec>{[alpha](double t) { return Vec{t, alpha * t * t}; }, Vec{0.0, 0.0},
                   "(t, a t^2)"};
}
}  // namespace

TEST_CASE("richardson extrapolation") {
  // constant quotients extrapolate to the constant with zero correction
  std::vector<double> steps{0.1, 0.05, 0.025};
  std::vector<double> flat{2.5, 2.5, 2.5};
  ExtrapolationTable t = richardson(flat, steps);
  CHECK(t.estimate == 2.5);
  CHECK(t.err_estimate == 0.0);

  // f(h) = 1 + h^2 at h, h/2, h/4
  std::vector<double> even{1.0 + 0.01, 1.0 + 0.0025, 1.0 + 0.000625};
  t = richardson(even, steps);
  CHECK(std::fabs(t.estimate - 1.0) <= 1e-12);

  // sin(h)/h from five geometric levels
  std::vector<double> s5, v5;
  for (int k = 0; k < 5; ++k) {
    const double h = 0.1 * std::pow(0.5, k);
    s5.push_back(h);
    v5.push_back(std::sin(h) / h);
  }
  t = richardson(v5, s5);
  CHECK(std::fabs(t.estimate - 1.0) <= 1e-10);

  std::vector<double> one{1.0};
  CHECK_THROWS_AS(richardson(one, std::vector<double>{0.1}), std::invalid_argument);
}

TEST_CASE("path_diff on the branch family functional") {
  std::function<double(const Vec&)> phi = xy_over_absy;

  PathDiffResult r = path_diff(phi, parabola_path(1.0));
  CHECK(r.estimate == 1.0);  // quotient is exactly constant
  CHECK(r.err_estimate == 0.0);
  CHECK(r.converged);

  r = path_diff(phi, parabola_path(-1.0));
  CHECK(r.estimate == -1.0);
  r = path_diff(phi, parabola_path(0.0));
  CHECK(r.estimate == 0.0);
}

TEST_CASE("path_diff basics") {
  std::function<double(const Vec&)> constant = [](const Vec&) { return 3.0; };
  PathDiffResult r = path_diff(constant, parabola_path(2.0));
  CHECK(r.estimate == 0.0);

  // volume of a growing interval
  std::function<double(const RegionSet&)> vol = [](const RegionSet& a) { return volume(a); };
  Path<RegionSet> grow{[](double t) { return RegionSet::interval(0.0, 1.0 + t); },
                       RegionSet::interval(0.0, 1.0), "[0, 1+t]"};
  r = path_diff(vol, grow);
  CHECK(std::fabs(r.estimate - 1.0) <= 1e-10);
  CHECK(r.converged);

  // declared basepoint must match the path at zero
  Path<RegionSet> lying{[](double t) { return RegionSet::interval(0.0, 1.0 + t); },
                        RegionSet::interval(0.0, 2.0), "mismatch"};
  CHECK_THROWS_AS(path_diff(vol, lying), std::invalid_argument);
}

TEST_CASE("path_diff is reparametrization-stable at first order") {
  std::function<double(double)> smooth = [](double t) { return std::exp(0.3 * t); };
  auto direct = path_diff_values(smooth);
  auto repar = path_diff_values([&](double t) { return smooth(t + t * t * t); });
  CHECK(std::fabs(direct.estimate - repar.estimate) <=
        10 * (direct.err_estimate + repar.err_estimate) + 1e-12);
  CHECK(std::fabs(direct.estimate - 0.3) <= 1e-9);
}

TEST_CASE("adherence derivative of the branch family") {
  std::function<double(const Vec&)> phi = xy_over_absy;
  PathFamily<Vec> fam;
  for (double alpha : {-2.0, -1.0, 0.0, 1.0, 2.0}) fam.paths.push_back(parabola_path(alpha));
  fam.label = "parabolas";

  AdherenceResult res = adherence_derivative(phi, fam);
  REQUIRE(res.clusters.size() == 3);
  CHECK(std::fabs(res.clusters[0].value + 1.0) <= 1e-9);
  CHECK(std::fabs(res.clusters[1].value) <= 1e-9);
  CHECK(std::fabs(res.clusters[2].value - 1.0) <= 1e-9);
  for (const auto& c : res.clusters) CHECK(c.radius <= 1e-9);
  for (const auto& p : res.per_path) {
    CHECK(p.converged);
    CHECK_FALSE(p.divergent);
  }
}

TEST_CASE("adherence derivative along t and -t") {
  PathFamily<Vec> fam;
  fam.paths.push_back(Path<Vec>{[](double t) { return Vec{t}; }, Vec{0.0}, "t"});
  fam.paths.push_back(Path<Vec>{[](double t) { return Vec{-t}; }, Vec{0.0}, "-t"});

  // |x| sees the one-sided quotient |c(t)|/t = +1 on both paths
  std::function<double(const Vec&)> absx = [](const Vec& p) { return std::fabs(p[0]); };
  AdherenceResult res = adherence_derivative(absx, fam);
  REQUIRE(res.clusters.size() == 1);
  CHECK(res.clusters[0].value == 1.0);

  // the identity separates the branches into exact quotients +1 and -1
  std::function<double(const Vec&)> ident = [](const Vec& p) { return p[0]; };
  res = adherence_derivative(ident, fam);
  REQUIRE(res.clusters.size() == 2);
  CHECK(res.clusters[0].value == -1.0);
  CHECK(res.clusters[1].value == 1.0);

  // mismatched basepoints are rejected
  fam.paths.push_back(Path<Vec>{[](double t) { return Vec{t + 1.0}; }, Vec{1.0}, "t+1"});
  CHECK_THROWS_AS(adherence_derivative(absx, fam), std::invalid_argument);
}

TEST_CASE("adherence of a linear functional is a singleton at the tangent pairing") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int iter = 0; iter < 25; ++iter) {
    const double a1 = u(rng), a2 = u(rng);
    const double u1 = u(rng), u2 = u(rng);
    std::function<double(const Vec&)> lin = [=](const Vec& p) { return a1 * p[0] + a2 * p[1]; };
    PathFamily<Vec> fam;
    for (int k = 0; k < 4; ++k) {
      const double w1 = u(rng), w2 = u(rng);  // distinct curvature per path
      fam.paths.push_back(Path<Vec>{
          [=](double t) { return Vec{u1 * t + w1 * t * t, u2 * t + w2 * t * t}; },
          Vec{0.0, 0.0}, "tangent + curvature"});
    }
    AdherenceResult res = adherence_derivative(lin, fam);
    const double want = a1 * u1 + a2 * u2;
    REQUIRE(res.clusters.size() == 1);
    CHECK(std::fabs(res.clusters[0].value - want) <=
          1e-3 * std::max(1.0, std::fabs(want)));
    for (const auto& p : res.per_path) CHECK(p.converged);
  }
}

TEST_CASE("adherence reports oscillation and divergence instead of failing") {
  // quotients alternate between -1 and 1
  std::vector<std::function<double(double)>> osc{[](double t) {
    if (t == 0.0) return 0.0;
    const int n = static_cast<int>(std::lround(1.0 / t));
    return (n % 2 == 0) ? t : -t;
  }};
  AdherenceResult res = adherence_derivative_values(osc);
  REQUIRE(res.per_path.size() == 1);
  CHECK_FALSE(res.per_path[0].converged);
  CHECK_FALSE(res.per_path[0].divergent);
  REQUIRE(res.clusters.size() == 2);
  CHECK(std::fabs(res.clusters[0].value + 1.0) <= 1e-9);
  CHECK(std::fabs(res.clusters[1].value - 1.0) <= 1e-9);

  // unbounded quotient sequence
  std::vector<std::function<double(double)>> div{
      [](double t) { return t == 0.0 ? 0.0 : std::sqrt(t) * 1e5; }};
  res = adherence_derivative_values(div, DiffSchedule::harmonic(4, 4096));
  CHECK(res.per_path[0].divergent);
  CHECK(res.clusters.empty());
}

TEST_CASE("fomin derivative for the gaussian and lebesgue models") {
  MeasureModel g = MeasureModel::gaussian(1);
  RegionSet a = RegionSet::interval(-1.0, 0.0);
  const double v = 1.0;
  FominResult r = fomin_derivative(g, a, std::span<const double>(&v, 1));

  const double want = oracle::normal_pdf(0.0) - oracle::normal_pdf(-1.0);
  CHECK(std::fabs(want - 0.156971555882289) <= 1e-12);
  CHECK(std::fabs(r.estimate - want) <= 1e-9);
  CHECK(r.antisymmetry_residual <= 1e-12);
  CHECK(r.antisymmetry_residual <= 10.0 * std::max(r.err_estimate, 1e-13));
  CHECK(r.converged);

  // symmetric set, symmetric measure: derivative vanishes
  FominResult sym = fomin_derivative(g, RegionSet::interval(-1.0, 1.0),
                                     std::span<const double>(&v, 1));
  CHECK(std::fabs(sym.estimate) <= 1e-12);

  // Lebesgue is translation invariant
  FominResult leb = fomin_derivative(MeasureModel::lebesgue(1), RegionSet::interval(0.25, 0.75),
                                     std::span<const double>(&v, 1));
  CHECK(std::fabs(leb.estimate) <= 1e-10);
}

TEST_CASE("directional set paths") {
  RegionSet a = RegionSet::interval(0.0, 1.0);
  DirectionalSetPath p = directional_path(a, {1.0}, [](double t) { return t; });
  CHECK(p.at(0.5) == RegionSet::interval(0.5, 1.5));
  CHECK(p.at(0.0) == a);

  DirectionalSetPath sine = directional_path(a, {1.0}, [](double t) { return std::sin(t); });
  CHECK(sine.at(0.0) == a);

  // composition law: precomposing the profile equals evaluating through it
  auto gfun = [](double s) { return 0.3 * s + s * s; };
  DirectionalSetPath composed =
      directional_path(a, {1.0}, [&](double s) { return std::sin(gfun(s)); });
  for (double s : linspace(-0.4, 0.4, 17)) CHECK(sine.at(gfun(s)) == composed.at(s));

  CHECK_THROWS_AS(directional_path(a, {1.0, 0.0}, [](double t) { return t; }),
                  std::invalid_argument);
}
