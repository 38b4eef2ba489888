#pragma once

// Subsets of R^d represented exactly as finite unions of closed axis-aligned
// boxes. Every RegionSet is kept in a canonical slab decomposition that is
// unique for a given point set, so structural equality decides set equality.
// Degenerate (point) boxes and half-infinite intervals are first-class.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace svcalc {

inline constexpr double kInf = __builtin_huge_val();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  static Interval point(double x) { return Interval(x, x); }
  static Interval whole() { return Interval(-kInf, kInf); }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }
  bool is_bounded() const { return lo > -kInf && hi < kInf; }
  double length() const { return hi - lo; }
  // Finite representative; clamps half-infinite intervals to the finite end.
  double midpoint() const;

  bool operator==(const Interval&) const = default;
};

struct Box {
  std::vector<Interval> axes;

  explicit Box(std::vector<Interval> axes_);
  Box(Interval x) : Box(std::vector<Interval>{x}) {}
  Box(Interval x, Interval y) : Box(std::vector<Interval>{x, y}) {}

  int dim() const { return static_cast<int>(axes.size()); }
  const Interval& operator[](int i) const { return axes[static_cast<size_t>(i)]; }
  Interval& operator[](int i) { return axes[static_cast<size_t>(i)]; }

  bool contains(std::span<const double> x) const;
  bool is_bounded() const;
  bool is_degenerate() const;  // zero volume (some axis is a point)
  double volume() const;       // requires bounded

  bool operator==(const Box&) const = default;
};

// Intersection of closed boxes; empty when some axis pair is disjoint.
std::optional<Box> box_intersection(const Box& a, const Box& b);

class RegionSet {
 public:
  RegionSet() = default;

  static RegionSet empty(int dim);
  // Canonicalizes an arbitrary box list.
  static RegionSet of(int dim, std::vector<Box> boxes);
  static RegionSet interval(double lo, double hi) { return of(1, {Box(Interval(lo, hi))}); }
  static RegionSet point(double x) { return of(1, {Box(Interval::point(x))}); }

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  const std::optional<Box>& universe() const { return universe_; }
  RegionSet with_universe(Box u) const;

  bool is_empty() const { return boxes_.empty(); }
  bool is_bounded() const;
  bool contains(std::span<const double> x) const;
  bool contains(double x) const;  // 1-D convenience

  // Canonical (= point-set) equality; the universe is metadata and ignored.
  bool operator==(const RegionSet& o) const { return dim_ == o.dim_ && boxes_ == o.boxes_; }

  friend RegionSet canonicalize(std::vector<Box> boxes, int dim);

 private:
  int dim_ = 1;
  std::vector<Box> boxes_;  // canonical: disjoint interiors, sorted
  std::optional<Box> universe_;
};

RegionSet canonicalize(std::vector<Box> boxes, int dim);

RegionSet region_union(const RegionSet& a, const RegionSet& b);
RegionSet region_intersect(const RegionSet& a, const RegionSet& b);
// Closure of the set difference, cl(a \ b). Boundary remnants of measure
// zero are closed back in; this keeps results representable by closed boxes.
RegionSet region_diff(const RegionSet& a, const RegionSet& b);
// cl(U \ a) relative to a's universe; throws if no universe is attached.
RegionSet region_complement(const RegionSet& a);
RegionSet region_symm_diff(const RegionSet& a, const RegionSet& b);

RegionSet translate(const RegionSet& a, std::span<const double> v, double t);

double volume(const RegionSet& a);     // Lebesgue measure, bounded input
double perimeter(const RegionSet& a);  // d=1: boundary point count, d=2: boundary length

// Distance from a point to the region (0 when inside, +inf when empty).
double dist_point_region(std::span<const double> x, const RegionSet& a);
// Closest point of the region; lexicographically smallest on ties.
std::vector<double> nearest_point(std::span<const double> x, const RegionSet& a);

struct SampledSet {
  int dim = 1;
  std::vector<std::vector<double>> points;
  double pitch = 0.0;
};

// Uniform sampling of every box at the given pitch, endpoints included,
// duplicates across boxes removed. Halving the pitch keeps old sample
// points, so refinements are supersets.
SampledSet sample_region(const RegionSet& a, double pitch);
SampledSet sampled_union(const SampledSet& a, const SampledSet& b);
bool sampled_equal(const SampledSet& a, const SampledSet& b);

double hausdorff(const SampledSet& a, const SampledSet& b);
double hausdorff_serial(const SampledSet& a, const SampledSet& b);
double hausdorff_parallel(const SampledSet& a, const SampledSet& b);

// Inclusive uniform grid over [lo, hi]; exact at both ends and at simple
// fractions of nice spans (n odd hits the middle exactly).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace svcalc
