#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "svcalc/setrep.hpp"

using namespace svcalc;

namespace {

// Membership oracle straight off the raw input boxes, independent of the
// canonical decomposition.
bool in_any(const std::vector<Box>& boxes, std::span<const double> x) {
  for (const auto& b : boxes)
    if (b.contains(x)) return true;
  return false;
}

std::vector<Box> random_boxes(std::mt19937& rng, int dim, int count, double lo = -4.0, double hi = 4.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Box> out;
  for (int k = 0; k < count; ++k) {
    std::vector<Interval> axes;
    for (int i = 0; i < dim; ++i) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      axes.push_back(Interval(a, b));
    }
    out.push_back(Box(std::move(axes)));
  }
  return out;
}

}  // namespace

TEST_CASE("interval invariants") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(kInf, kInf), std::invalid_argument);
  CHECK(Interval::point(3.0).is_point());
  CHECK(Interval(-kInf, 0.0).contains(-1e300));
  CHECK_FALSE(Interval(-kInf, 0.0).is_bounded());
}

TEST_CASE("1-D canonicalization merges overlapping and touching intervals") {
  RegionSet r = RegionSet::of(1, {Box(Interval(0, 2)), Box(Interval(1, 3))});
  REQUIRE(r.boxes().size() == 1);
  CHECK(r.boxes()[0][0] == Interval(0, 3));

  RegionSet touching = RegionSet::of(1, {Box(Interval(0, 1)), Box(Interval(1, 2))});
  CHECK(touching == RegionSet::interval(0, 2));

  CHECK(RegionSet::of(1, {}).is_empty());
}

TEST_CASE("2-D canonicalization glues boxes sharing a face") {
  RegionSet a = RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 1)), Box(Interval(1, 2), Interval(0, 1))});
  RegionSet b = RegionSet::of(2, {Box(Interval(0, 2), Interval(0, 1))});
  CHECK(a == b);
  CHECK(a.boxes().size() == 1);

  // membership oracle on a coarse grid
  for (double x = -0.5; x <= 2.5; x += 0.01) {
    const double pt[2] = {x, 0.5};
    CHECK(a.contains(pt) == (x >= 0.0 && x <= 2.0));
  }
}

TEST_CASE("canonicalize is idempotent and intrinsic to the point set") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 60; ++iter) {
    const int dim = 1 + iter % 3;
    auto boxes = random_boxes(rng, dim, 1 + iter % 5);
    RegionSet r = RegionSet::of(dim, boxes);
    RegionSet again = RegionSet::of(dim, r.boxes());
    CHECK(r == again);

    // split one box along axis 0 into two touching halves; same point set
    if (!boxes.empty() && !boxes[0][0].is_point()) {
      auto split = boxes;
      Box left = boxes[0], right = boxes[0];
      const double mid = 0.5 * (boxes[0][0].lo + boxes[0][0].hi);
      left[0].hi = mid;
      right[0].lo = mid;
      split[0] = left;
      split.push_back(right);
      CHECK(RegionSet::of(dim, split) == r);
    }

    // membership agreement with the raw-box oracle on random probes
    std::uniform_real_distribution<double> u(-4.5, 4.5);
    for (int q = 0; q < 200; ++q) {
      std::vector<double> x;
      for (int i = 0; i < dim; ++i) x.push_back(u(rng));
      CHECK(r.contains(x) == in_any(boxes, x));
    }
  }
}

TEST_CASE("degenerate boxes survive where they stick out and vanish where covered") {
  // spike sticking out of a square
  RegionSet spiked = RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 1)),
                                       Box(Interval::point(0.5), Interval(0, 2))});
  REQUIRE(spiked.boxes().size() == 2);
  CHECK(spiked.boxes()[0] == Box(Interval(0, 1), Interval(0, 1)));
  CHECK(spiked.boxes()[1] == Box(Interval::point(0.5), Interval(1, 2)));

  // fully covered degenerate box disappears
  RegionSet covered = RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 1)),
                                        Box(Interval::point(0.5), Interval(0, 1))});
  CHECK(covered == RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 1))}));
}

TEST_CASE("boolean operations have exact point-set semantics") {
  // travelling pair of intervals
  auto c = [](double t) { return RegionSet::interval(t - 1, t + 1); };
  RegionSet gamma = region_intersect(c(1.5), c(-1.5));
  CHECK(gamma.is_empty());
  gamma = region_intersect(c(0.5), c(-0.5));
  CHECK(gamma == RegionSet::interval(-0.5, 0.5));
  gamma = region_intersect(c(1.0), c(-1.0));
  CHECK(gamma == RegionSet::point(0.0));

  // union with the empty set is the identity
  RegionSet a = RegionSet::of(1, {Box(Interval(0, 1)), Box(Interval(2, 3))});
  CHECK(region_union(a, RegionSet::empty(1)) == a);

  // degenerate singletons
  CHECK(region_intersect(RegionSet::point(1e-6), RegionSet::point(-1e-6)).is_empty());
  CHECK(region_intersect(RegionSet::point(0.0), RegionSet::point(0.0)) == RegionSet::point(0.0));
}

TEST_CASE("closure difference") {
  CHECK(region_diff(RegionSet::interval(0, 2), RegionSet::interval(1, 2)) == RegionSet::interval(0, 1));
  CHECK(region_diff(RegionSet::interval(0, 2), RegionSet::point(1.0)) == RegionSet::interval(0, 2));
  CHECK(region_diff(RegionSet::interval(0, 2), RegionSet::interval(0, 2)).is_empty());
  CHECK(region_diff(RegionSet::interval(0, 2), RegionSet::interval(-1, 3)).is_empty());
  // removing an inner band leaves two closed pieces
  RegionSet two = region_diff(RegionSet::interval(0, 3), RegionSet::interval(1, 2));
  CHECK(two == RegionSet::of(1, {Box(Interval(0, 1)), Box(Interval(2, 3))}));
  // half-line handling
  RegionSet tail = region_diff(RegionSet::of(1, {Box(Interval(-kInf, 3.0))}),
                               RegionSet::of(1, {Box(Interval(-kInf, 1.0))}));
  CHECK(tail == RegionSet::interval(1, 3));
}

TEST_CASE("complement requires a universe and obeys De Morgan generically") {
  RegionSet a = RegionSet::interval(0, 1);
  CHECK_THROWS_AS(region_complement(a), std::invalid_argument);

  const Box universe(Interval(-5, 5));
  std::mt19937 rng(21);
  for (int iter = 0; iter < 100; ++iter) {
    auto ab = random_boxes(rng, 1, 2);
    RegionSet x = RegionSet::of(1, {ab[0]}).with_universe(universe);
    RegionSet y = RegionSet::of(1, {ab[1]}).with_universe(universe);
    CHECK(region_complement(region_union(x, y)) ==
          region_intersect(region_complement(x), region_complement(y)));
    CHECK(region_complement(region_intersect(x, y)) ==
          region_union(region_complement(x), region_complement(y)));
  }
}

TEST_CASE("boolean algebra laws on random pairs") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    const int dim = 1 + iter % 2;
    RegionSet a = RegionSet::of(dim, random_boxes(rng, dim, 1 + iter % 3));
    RegionSet b = RegionSet::of(dim, random_boxes(rng, dim, 1 + (iter + 1) % 3));
    RegionSet c = RegionSet::of(dim, random_boxes(rng, dim, 1 + (iter + 2) % 3));

    CHECK(region_union(a, b) == region_union(b, a));
    CHECK(region_intersect(a, b) == region_intersect(b, a));
    CHECK(region_union(region_union(a, b), c) == region_union(a, region_union(b, c)));
    CHECK(region_intersect(a, region_union(b, c)) ==
          region_union(region_intersect(a, b), region_intersect(a, c)));
    CHECK(region_symm_diff(a, a).is_empty());
    CHECK(region_symm_diff(a, RegionSet::empty(dim)) == a);

    // inclusion-exclusion for volume
    const double lhs = volume(region_union(a, b)) + volume(region_intersect(a, b));
    const double rhs = volume(a) + volume(b);
    CHECK(std::fabs(lhs - rhs) <= 1e-12);

    // symmetric difference against the XOR membership oracle
    RegionSet sd = region_symm_diff(a, b);
    std::uniform_real_distribution<double> u(-4.5, 4.5);
    for (int q = 0; q < 50; ++q) {
      std::vector<double> x;
      for (int i = 0; i < dim; ++i) x.push_back(u(rng));
      CHECK(sd.contains(x) == (a.contains(x) != b.contains(x)));
    }
  }
}

TEST_CASE("translate") {
  RegionSet pt = RegionSet::point(0.0);
  const double v = 1.0;
  RegionSet moved = translate(pt, std::span<const double>(&v, 1), 0.75);
  CHECK(moved == RegionSet::point(0.75));

  RegionSet a = RegionSet::of(1, {Box(Interval(-1, 0))});
  CHECK(translate(a, std::span<const double>(&v, 1), 0.0) == a);
  CHECK(translate(a, std::span<const double>(&v, 1), 0.25) == RegionSet::interval(-0.75, 0.25));

  // group action, exact on dyadic data
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> di(-2048, 2048);
  for (int iter = 0; iter < 50; ++iter) {
    const double lo = di(rng) / 1024.0, len = std::abs(di(rng)) / 1024.0;
    const double w = di(rng) / 256.0;
    const double s = di(rng) / 1024.0, t = di(rng) / 1024.0;
    RegionSet r = RegionSet::interval(lo, lo + len);
    std::span<const double> dir(&w, 1);
    CHECK(translate(translate(r, dir, s), dir, t) == translate(r, dir, s + t));
  }
}

TEST_CASE("volume and perimeter") {
  RegionSet box = RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 2))});
  CHECK(volume(box) == doctest::Approx(2.0).epsilon(1e-15));
  RegionSet square = RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 1))});
  CHECK(perimeter(square) == doctest::Approx(4.0).epsilon(1e-15));

  // L-shape: two boxes sharing a partial face
  RegionSet ell = RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 1)), Box(Interval(1, 2), Interval(0, 2))});
  CHECK(volume(ell) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(perimeter(ell) == doctest::Approx(8.0).epsilon(1e-15));

  // 1-D: endpoint count
  RegionSet comps = RegionSet::of(1, {Box(Interval(0, 1)), Box(Interval::point(2.0))});
  CHECK(perimeter(comps) == doctest::Approx(3.0));

  CHECK_THROWS_AS(volume(RegionSet::of(1, {Box(Interval(0, kInf))})), std::invalid_argument);
}

TEST_CASE("volume of random overlapping boxes matches a Monte-Carlo oracle") {
  std::mt19937 rng(1234);
  auto boxes = random_boxes(rng, 2, 3, -2.0, 2.0);
  RegionSet r = RegionSet::of(2, boxes);
  const double vol = volume(r);

  // oracle: 1e6 uniform samples over the bounding box of the raw input
  double blo[2] = {kInf, kInf}, bhi[2] = {-kInf, -kInf};
  for (const auto& b : boxes)
    for (int i = 0; i < 2; ++i) {
      blo[i] = std::min(blo[i], b[i].lo);
      bhi[i] = std::max(bhi[i], b[i].hi);
    }
  const double cell = (bhi[0] - blo[0]) * (bhi[1] - blo[1]);
  std::mt19937 mc(4321);
  std::uniform_real_distribution<double> ux(blo[0], bhi[0]), uy(blo[1], bhi[1]);
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const double x[2] = {ux(mc), uy(mc)};
    if (in_any(boxes, x)) ++hits;
  }
  const double p = static_cast<double>(hits) / n;
  const double est = p * cell;
  const double sigma = cell * std::sqrt(p * (1.0 - p) / n);
  CHECK(std::fabs(vol - est) <= 3.0 * sigma);
}

TEST_CASE("hausdorff distance") {
  SampledSet s = sample_region(RegionSet::interval(0, 1), 0.05);
  CHECK(hausdorff(s, s) == 0.0);

  SampledSet t = sample_region(RegionSet::interval(0, 2), 0.05);
  CHECK(hausdorff(s, t) == doctest::Approx(1.0).epsilon(0.06));

  CHECK_THROWS_AS(hausdorff(SampledSet{}, s), std::invalid_argument);

  // brute-force double loop oracle on random clouds
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledSet a, b;
  a.dim = b.dim = 2;
  a.pitch = b.pitch = 0.1;
  for (int i = 0; i < 150; ++i) a.points.push_back({u(rng), u(rng)});
  for (int i = 0; i < 170; ++i) b.points.push_back({u(rng), u(rng)});
  double dab = 0.0, dba = 0.0;
  for (const auto& p : a.points) {
    double m = kInf;
    for (const auto& q : b.points) m = std::min(m, std::hypot(p[0] - q[0], p[1] - q[1]));
    dab = std::max(dab, m);
  }
  for (const auto& q : b.points) {
    double m = kInf;
    for (const auto& p : a.points) m = std::min(m, std::hypot(p[0] - q[0], p[1] - q[1]));
    dba = std::max(dba, m);
  }
  CHECK(hausdorff(a, b) == std::max(dab, dba));
  CHECK(hausdorff_serial(a, b) == hausdorff_parallel(a, b));
}

TEST_CASE("contains and emptiness") {
  RegionSet a = RegionSet::interval(0, 1);
  CHECK(a.contains(0.5));
  CHECK(a.contains(0.0));
  CHECK_FALSE(a.contains(1.5));
  CHECK_FALSE(RegionSet::empty(1).contains(0.3));
  CHECK(RegionSet::empty(3).is_empty());
}

TEST_CASE("dimension mismatches are rejected across the board") {
  RegionSet a = RegionSet::interval(0, 1);
  RegionSet b = RegionSet::of(2, {Box(Interval(0, 1), Interval(0, 1))});
  CHECK_THROWS_AS(region_union(a, b), std::invalid_argument);
  CHECK_THROWS_AS(region_intersect(a, b), std::invalid_argument);
  CHECK_THROWS_AS(region_diff(a, b), std::invalid_argument);
  const double v2[2] = {1.0, 0.0};
  CHECK_THROWS_AS(translate(a, std::span<const double>(v2, 2), 1.0), std::invalid_argument);
  const double p2[2] = {0.5, 0.5};
  CHECK_THROWS_AS(a.contains(std::span<const double>(p2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(RegionSet::of(1, {Box(Interval(0, 1), Interval(0, 1))}),
                  std::invalid_argument);
}

TEST_CASE("membership equality iff canonical equality (grid spot check)") {
  std::mt19937 rng(33);
  for (int iter = 0; iter < 40; ++iter) {
    RegionSet a = RegionSet::of(1, random_boxes(rng, 1, 2));
    RegionSet b = RegionSet::of(1, random_boxes(rng, 1, 2));
    bool same_membership = true;
    for (double x = -4.5; x <= 4.5; x += 0.003)
      if (a.contains(x) != b.contains(x)) { same_membership = false; break; }
    if (a == b) CHECK(same_membership);
    // distinct canonical forms of generic random inputs differ somewhere
    if (!same_membership) CHECK_FALSE(a == b);
  }
}

TEST_CASE("random operation chains agree with a pointwise oracle") {
  // Build random expressions over union / intersect / diff and compare the
  // canonical result against direct membership logic at random probe points
  // (off the measure-zero boundaries, where closure semantics round in).
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> u(-4.5, 4.5);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int iter = 0; iter < 40; ++iter) {
      auto abox = random_boxes(rng, dim, 2), bbox = random_boxes(rng, dim, 2),
           cbox = random_boxes(rng, dim, 1);
      RegionSet a = RegionSet::of(dim, abox), b = RegionSet::of(dim, bbox),
                c = RegionSet::of(dim, cbox);
      const int recipe = iter % 4;
      RegionSet result = [&] {
        switch (recipe) {
          case 0: return region_diff(region_union(a, b), c);
          case 1: return region_union(region_diff(a, b), region_intersect(b, c));
          case 2: return region_intersect(region_diff(a, c), region_diff(b, c));
          default: return region_diff(a, region_union(b, c));
        }
      }();
      for (int q = 0; q < 100; ++q) {
        std::vector<double> x;
        for (int i = 0; i < dim; ++i) x.push_back(u(rng));
        const bool in_a = in_any(abox, x), in_b = in_any(bbox, x), in_c = in_any(cbox, x);
        bool want = false;
        switch (recipe) {
          case 0: want = (in_a || in_b) && !in_c; break;
          case 1: want = (in_a && !in_b) || (in_b && in_c); break;
          case 2: want = (in_a && !in_c) && (in_b && !in_c); break;
          default: want = in_a && !(in_b || in_c); break;
        }
        CHECK(result.contains(x) == want);
      }
      // the chained result is already canonical
      CHECK(RegionSet::of(dim, result.boxes()) == result);
    }
  }
}

TEST_CASE("inclusion-exclusion holds in three dimensions") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    RegionSet a = RegionSet::of(3, random_boxes(rng, 3, 2));
    RegionSet b = RegionSet::of(3, random_boxes(rng, 3, 2));
    const double lhs = volume(region_union(a, b)) + volume(region_intersect(a, b));
    CHECK(std::fabs(lhs - (volume(a) + volume(b))) <= 1e-11);
  }
}

TEST_CASE("sampling grids refine into supersets") {
  RegionSet a = RegionSet::of(1, {Box(Interval(0, 1)), Box(Interval(2, 2.5))});
  SampledSet coarse = sample_region(a, 0.25);
  SampledSet fine = sample_region(a, 0.125);
  for (const auto& p : coarse.points)
    CHECK(std::find(fine.points.begin(), fine.points.end(), p) != fine.points.end());
  CHECK(fine.points.size() > coarse.points.size());
}
