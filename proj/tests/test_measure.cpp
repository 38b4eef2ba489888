#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "svcalc/gauss.hpp"
#include "svcalc/measure.hpp"
#include "svcalc/quadrature.hpp"
#include "svcalc/setrep.hpp"

using namespace svcalc;

TEST_CASE("erf approximation against the integration oracle") {
  for (double x = -6.0; x <= 6.0; x += 0.0625) {
    CHECK(std::fabs(normal_cdf(x) - oracle::normal_cdf(x)) <= 1e-12);
  }
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(-kInf) == 0.0);
  CHECK(normal_cdf(kInf) == 1.0);
  CHECK(erf_approx(0.0) == 0.0);
  CHECK(std::fabs(erf_approx(1.0) - 0.84270079294971486934) <= 1e-14);
  CHECK(std::fabs(erfc_approx(3.0) - (1.0 - erf_approx(3.0))) <= 1e-16);
}

TEST_CASE("adaptive quadrature") {
  auto poly = [](double x) { return 3.0 * x * x; };
  CHECK(std::fabs(integrate(poly, 0.0, 2.0).value - 8.0) <= 1e-12);

  auto wavy = [](double x) { return std::sin(10.0 * x) * std::exp(-x); };
  const double want = oracle::simpson(wavy, 0.0, 3.0, 1 << 18);
  CHECK(std::fabs(integrate(wavy, 0.0, 3.0, 1e-11).value - want) <= 1e-9);

  CHECK(integrate(poly, 1.0, 1.0).value == 0.0);
  CHECK_THROWS_AS(integrate(poly, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("gaussian measure of boxes") {
  MeasureModel g = MeasureModel::gaussian(1);
  RegionSet half = RegionSet::of(1, {Box(Interval(-kInf, 0.0))});
  CHECK(mu(g, half) == 0.5);

  // frozen oracle value: Phi(0) - Phi(-1)
  RegionSet a = RegionSet::interval(-1.0, 0.0);
  const double want = oracle::normal_cdf(0.0) - oracle::normal_cdf(-1.0);
  CHECK(std::fabs(want - 0.341344746068543) <= 1e-12);
  CHECK(std::fabs(mu(g, a) - want) <= 1e-12);

  MeasureModel g2 = MeasureModel::gaussian(2);
  RegionSet quadrant = RegionSet::of(2, {Box(Interval(-kInf, 0.0), Interval(-kInf, 0.0))});
  CHECK(std::fabs(mu(g2, quadrant) - 0.25) <= 1e-15);
}

TEST_CASE("lebesgue and uniform measures") {
  MeasureModel leb = MeasureModel::lebesgue(2);
  RegionSet box = RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 2))});
  CHECK(mu(leb, box) == 2.0);
  CHECK_THROWS_AS(mu(MeasureModel::lebesgue(1), RegionSet::of(1, {Box(Interval(0.0, kInf))})),
                  std::invalid_argument);

  MeasureModel uni = MeasureModel::uniform({{0.0, 2.0}});
  CHECK(mu(uni, RegionSet::interval(0.0, 1.0)) == 0.5);
  CHECK(mu(uni, RegionSet::of(1, {Box(Interval(-kInf, kInf))})) == 1.0);

  // translation covariance for Lebesgue; exact on dyadic endpoints and
  // shifts, within an ulp otherwise
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> di(-2048, 2048);
  std::uniform_real_distribution<double> ur(-2.0, 2.0);
  const double v = 1.0;
  for (int i = 0; i < 50; ++i) {
    double a = di(rng) / 1024.0, b = di(rng) / 1024.0;
    if (a > b) std::swap(a, b);
    RegionSet r = RegionSet::interval(a, b);
    CHECK(mu(MeasureModel::lebesgue(1), translate(r, std::span<const double>(&v, 1), di(rng) / 1024.0)) ==
          mu(MeasureModel::lebesgue(1), r));
    const double generic =
        mu(MeasureModel::lebesgue(1), translate(r, std::span<const double>(&v, 1), ur(rng)));
    CHECK(std::fabs(generic - (b - a)) <= 4e-15);
  }
}

TEST_CASE("measure additivity and monotonicity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  MeasureModel g = MeasureModel::gaussian(1);
  for (int i = 0; i < 100; ++i) {
    double a1 = u(rng), b1 = u(rng), a2 = u(rng), b2 = u(rng);
    if (a1 > b1) std::swap(a1, b1);
    if (a2 > b2) std::swap(a2, b2);
    RegionSet x = RegionSet::interval(a1, b1), y = RegionSet::interval(a2, b2);
    const double lhs = mu(g, region_union(x, y)) + mu(g, region_intersect(x, y));
    CHECK(std::fabs(lhs - (mu(g, x) + mu(g, y))) <= 1e-10);
    CHECK(mu(g, region_intersect(x, y)) <= mu(g, x) + 1e-12);
  }
}

TEST_CASE("measure preconditions") {
  CHECK_THROWS_AS(mu(MeasureModel::gaussian(2), RegionSet::interval(0, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(MeasureModel::uniform({{1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(TestFunction::bump(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ev(TestFunction::bump(), RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 1))})),
                  std::invalid_argument);
}

TEST_CASE("mu_restricted") {
  MeasureModel leb = MeasureModel::lebesgue(1);
  auto muA = mu_restricted(leb, RegionSet::interval(0.0, 1.0));
  CHECK(muA(RegionSet::interval(0.5, 2.0)) == 0.5);
  CHECK(muA(RegionSet::interval(-3.0, 4.0)) == 1.0);
  CHECK_THROWS_AS(mu_restricted(leb, RegionSet::empty(1)), std::invalid_argument);

  // additivity of the restricted functional
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    double a1 = u(rng), b1 = u(rng), a2 = u(rng), b2 = u(rng);
    if (a1 > b1) std::swap(a1, b1);
    if (a2 > b2) std::swap(a2, b2);
    RegionSet x = RegionSet::interval(a1, b1), y = RegionSet::interval(a2, b2);
    const double lhs = muA(region_union(x, y)) + muA(region_intersect(x, y));
    CHECK(std::fabs(lhs - (muA(x) + muA(y))) <= 1e-12);
  }
}

TEST_CASE("bump test function and ev") {
  TestFunction f = TestFunction::bump(0.0, 1.0);

  // normalization constant against the Simpson oracle
  const double z = oracle::simpson(oracle::bump_unnormalized, -1.0, 1.0, 1 << 18);
  CHECK(std::fabs(f.normalization() - z) <= 1e-10);
  CHECK(f.unnormalized(0.5) == std::exp(-4.0 / 3.0));
  CHECK(f.unnormalized(1.0) == 0.0);
  CHECK(f.unnormalized(2.5) == 0.0);

  // integral over the whole support is one for a mollifier
  RegionSet line = RegionSet::of(1, {Box(Interval(-kInf, kInf))});
  CHECK(std::fabs(ev(f, line) - 1.0) <= 1e-9);

  // disjoint support gives zero
  CHECK(ev(f, RegionSet::interval(2.0, 3.0)) == 0.0);

  // half-line value against the oracle
  RegionSet half = RegionSet::of(1, {Box(Interval(-kInf, 0.5))});
  const double want = oracle::simpson(oracle::bump_unnormalized, -1.0, 0.5, 1 << 18) / z;
  CHECK(std::fabs(ev(f, half) - want) <= 1e-9);

  // additive over disjoint regions
  RegionSet split = RegionSet::of(1, {Box(Interval(-2.0, 0.1)), Box(Interval(0.3, 5.0))});
  const double parts = ev(f, RegionSet::interval(-2.0, 0.1)) + ev(f, RegionSet::interval(0.3, 5.0));
  CHECK(std::fabs(ev(f, split) - parts) <= 1e-9);
}
