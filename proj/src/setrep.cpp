#include "svcalc/setrep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svcalc/parallel.hpp"

namespace svcalc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_dim(int have, int want, const char* where) {
  if (have != want) fail(std::string(where) + ": dimension mismatch (" + std::to_string(have) + " vs " + std::to_string(want) + ")");
}

bool box_less(const Box& a, const Box& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i].lo != b[i].lo) return a[i].lo < b[i].lo;
    if (a[i].hi != b[i].hi) return a[i].hi < b[i].hi;
  }
  return false;
}

Box drop_head(const Box& b) {
  return Box(std::vector<Interval>(b.axes.begin() + 1, b.axes.end()));
}

Box prepend(Interval head, const Box& tail) {
  std::vector<Interval> axes;
  axes.reserve(tail.axes.size() + 1);
  axes.push_back(head);
  axes.insert(axes.end(), tail.axes.begin(), tail.axes.end());
  return Box(std::move(axes));
}

std::vector<Box> canonical_1d(const std::vector<Box>& boxes) {
  std::vector<Interval> iv;
  iv.reserve(boxes.size());
  for (const auto& b : boxes) iv.push_back(b[0]);
  std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  });
  std::vector<Box> out;
  for (const auto& i : iv) {
    if (!out.empty() && i.lo <= out.back()[0].hi) {
      out.back()[0].hi = std::max(out.back()[0].hi, i.hi);
    } else {
      out.push_back(Box(i));
    }
  }
  return out;
}

// Cross-section of the box list over the open slab (u, v): a box covers the
// slab iff its head interval spans it entirely (endpoints are breakpoints).
std::vector<Box> slab_cross(const std::vector<Box>& boxes, double u, double v) {
  std::vector<Box> out;
  for (const auto& b : boxes)
    if (b[0].lo <= u && b[0].hi >= v) out.push_back(drop_head(b));
  return out;
}

std::vector<Box> point_cross(const std::vector<Box>& boxes, double x) {
  std::vector<Box> out;
  for (const auto& b : boxes)
    if (b[0].contains(x)) out.push_back(drop_head(b));
  return out;
}

RegionSet diff_closure(const RegionSet& a, const RegionSet& b);

// cl(A \ B) for 1-D canonical interval lists. Removed open ends are closed
// back in, so cl([0,2] \ {1}) is [0,2] again while cl([0,2] \ [1,2]) = [0,1].
std::vector<Box> diff_closure_1d(const std::vector<Box>& A, const std::vector<Box>& B) {
  std::vector<Box> out;
  for (const auto& comp : A) {
    double s = comp[0].lo;
    const double e = comp[0].hi;
    bool alive = true;
    for (const auto& cut : B) {
      const double c = cut[0].lo, d = cut[0].hi;
      if (d < s) continue;
      if (c > e) break;
      if (c > s) out.push_back(Box(Interval(s, c)));
      if (d >= e) { alive = false; break; }
      s = d;
    }
    if (alive) out.push_back(Box(Interval(s, e)));
  }
  return canonical_1d(out);
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (std::isnan(lo) || std::isnan(hi)) fail("Interval: NaN endpoint");
  if (lo > hi) fail("Interval: lo > hi");
  if (lo == hi && !std::isfinite(lo)) fail("Interval: degenerate endpoint at infinity");
}

double Interval::midpoint() const {
  if (is_bounded()) return 0.5 * (lo + hi);
  if (lo > -kInf) return lo;
  if (hi < kInf) return hi;
  return 0.0;
}

Box::Box(std::vector<Interval> axes_) : axes(std::move(axes_)) {
  if (axes.empty()) fail("Box: needs at least one axis");
}

bool Box::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) fail("Box::contains: dimension mismatch");
  for (int i = 0; i < dim(); ++i)
    if (!axes[static_cast<size_t>(i)].contains(x[static_cast<size_t>(i)])) return false;
  return true;
}

bool Box::is_bounded() const {
  for (const auto& a : axes)
    if (!a.is_bounded()) return false;
  return true;
}

bool Box::is_degenerate() const {
  for (const auto& a : axes)
    if (a.is_point()) return true;
  return false;
}

double Box::volume() const {
  if (!is_bounded()) fail("Box::volume: unbounded box");
  double v = 1.0;
  for (const auto& a : axes) v *= a.length();
  return v;
}

std::optional<Box> box_intersection(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) fail("box_intersection: dimension mismatch");
  std::vector<Interval> axes;
  axes.reserve(a.axes.size());
  for (int i = 0; i < a.dim(); ++i) {
    const double lo = std::max(a[i].lo, b[i].lo);
    const double hi = std::min(a[i].hi, b[i].hi);
    if (lo > hi) return std::nullopt;
    axes.push_back(Interval(lo, hi));
  }
  return Box(std::move(axes));
}

RegionSet RegionSet::empty(int dim) {
  if (dim < 1) fail("RegionSet: dimension must be >= 1");
  RegionSet r;
  r.dim_ = dim;
  return r;
}

RegionSet RegionSet::of(int dim, std::vector<Box> boxes) { return canonicalize(std::move(boxes), dim); }

RegionSet RegionSet::with_universe(Box u) const {
  check_dim(u.dim(), dim_, "with_universe");
  RegionSet r = *this;
  r.universe_ = std::move(u);
  return r;
}

bool RegionSet::is_bounded() const {
  for (const auto& b : boxes_)
    if (!b.is_bounded()) return false;
  return true;
}

bool RegionSet::contains(std::span<const double> x) const {
  check_dim(static_cast<int>(x.size()), dim_, "contains");
  for (const auto& b : boxes_)
    if (b.contains(x)) return true;
  return false;
}

bool RegionSet::contains(double x) const {
  check_dim(1, dim_, "contains");
  return contains(std::span<const double>(&x, 1));
}

RegionSet canonicalize(std::vector<Box> boxes, int dim) {
  if (dim < 1) fail("canonicalize: dimension must be >= 1");
  for (const auto& b : boxes) check_dim(b.dim(), dim, "canonicalize");

  RegionSet r;
  r.dim_ = dim;
  if (boxes.empty()) return r;

  if (dim == 1) {
    r.boxes_ = canonical_1d(boxes);
    return r;
  }

  // Slab decomposition along axis 0. Breakpoints are the finite endpoints;
  // open slabs between them have constant cross-sections.
  std::vector<double> bp;
  bool left_open = false, right_open = false;
  for (const auto& b : boxes) {
    if (b[0].lo == -kInf) left_open = true; else bp.push_back(b[0].lo);
    if (b[0].hi == kInf) right_open = true; else bp.push_back(b[0].hi);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  std::vector<Box> out;
  if (bp.empty()) {
    // every head interval is the whole line
    RegionSet cross = canonicalize(slab_cross(boxes, -kInf, kInf), dim - 1);
    for (const auto& t : cross.boxes()) out.push_back(prepend(Interval::whole(), t));
    r.boxes_ = std::move(out);
    return r;
  }

  struct Slab { double u, v; RegionSet cross; };
  std::vector<Slab> slabs;
  if (left_open) slabs.push_back({-kInf, bp.front(), {}});
  for (size_t i = 0; i + 1 < bp.size(); ++i) slabs.push_back({bp[i], bp[i + 1], {}});
  if (right_open) slabs.push_back({bp.back(), kInf, {}});
  for (auto& s : slabs) s.cross = canonicalize(slab_cross(boxes, s.u, s.v), dim - 1);

  // Maximal runs of slabs with identical cross-sections become one slab.
  for (size_t i = 0; i < slabs.size();) {
    if (slabs[i].cross.is_empty()) { ++i; continue; }
    size_t j = i;
    while (j + 1 < slabs.size() && slabs[j + 1].cross == slabs[i].cross) ++j;
    for (const auto& t : slabs[i].cross.boxes())
      out.push_back(prepend(Interval(slabs[i].u, slabs[j].v), t));
    i = j + 1;
  }

  // Matter present at a breakpoint beyond the adjacent slab closures becomes
  // a degenerate slab there.
  const int first_bp_slab = left_open ? 1 : 0;
  for (size_t i = 0; i < bp.size(); ++i) {
    RegionSet at = canonicalize(point_cross(boxes, bp[i]), dim - 1);
    if (at.is_empty()) continue;
    const long li = static_cast<long>(first_bp_slab) + static_cast<long>(i) - 1;
    RegionSet side = RegionSet::empty(dim - 1);
    if (li >= 0 && li < static_cast<long>(slabs.size())) side = slabs[static_cast<size_t>(li)].cross;
    if (li + 1 >= 0 && li + 1 < static_cast<long>(slabs.size()))
      side = region_union(side, slabs[static_cast<size_t>(li + 1)].cross);
    RegionSet ex = diff_closure(at, side);
    for (const auto& t : ex.boxes()) out.push_back(prepend(Interval::point(bp[i]), t));
  }

  std::sort(out.begin(), out.end(), box_less);
  r.boxes_ = std::move(out);
  return r;
}

namespace {

RegionSet diff_closure(const RegionSet& a, const RegionSet& b) {
  check_dim(b.dim(), a.dim(), "region_diff");
  if (a.is_empty() || b.is_empty()) return a;
  const int d = a.dim();
  if (d == 1) return canonicalize(diff_closure_1d(a.boxes(), b.boxes()), 1);

  std::vector<double> bp;
  bool left_open = false, right_open = false;
  auto scan = [&](const std::vector<Box>& bs) {
    for (const auto& box : bs) {
      if (box[0].lo == -kInf) left_open = true; else bp.push_back(box[0].lo);
      if (box[0].hi == kInf) right_open = true; else bp.push_back(box[0].hi);
    }
  };
  scan(a.boxes());
  scan(b.boxes());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  std::vector<Box> out;
  auto emit = [&](Interval head, const RegionSet& e) {
    for (const auto& t : e.boxes()) out.push_back(prepend(head, t));
  };

  if (bp.empty()) {
    emit(Interval::whole(), diff_closure(canonicalize(slab_cross(a.boxes(), -kInf, kInf), d - 1),
                                         canonicalize(slab_cross(b.boxes(), -kInf, kInf), d - 1)));
    return canonicalize(std::move(out), d);
  }

  auto slab_piece = [&](double u, double v) {
    emit(Interval(u, v), diff_closure(canonicalize(slab_cross(a.boxes(), u, v), d - 1),
                                      canonicalize(slab_cross(b.boxes(), u, v), d - 1)));
  };
  if (left_open) slab_piece(-kInf, bp.front());
  for (size_t i = 0; i + 1 < bp.size(); ++i) slab_piece(bp[i], bp[i + 1]);
  if (right_open) slab_piece(bp.back(), kInf);
  for (double x : bp)
    emit(Interval::point(x), diff_closure(canonicalize(point_cross(a.boxes(), x), d - 1),
                                          canonicalize(point_cross(b.boxes(), x), d - 1)));
  return canonicalize(std::move(out), d);
}

std::optional<Box> merged_universe(const RegionSet& a, const RegionSet& b) {
  if (a.universe() && b.universe()) {
    if (*a.universe() == *b.universe()) return a.universe();
    return std::nullopt;
  }
  return a.universe() ? a.universe() : b.universe();
}

RegionSet keep_universe(RegionSet r, const std::optional<Box>& u) {
  return u ? r.with_universe(*u) : r;
}

}  // namespace

RegionSet region_union(const RegionSet& a, const RegionSet& b) {
  check_dim(b.dim(), a.dim(), "union");
  std::vector<Box> boxes = a.boxes();
  boxes.insert(boxes.end(), b.boxes().begin(), b.boxes().end());
  return keep_universe(canonicalize(std::move(boxes), a.dim()), merged_universe(a, b));
}

RegionSet region_intersect(const RegionSet& a, const RegionSet& b) {
  check_dim(b.dim(), a.dim(), "intersect");
  std::vector<Box> boxes;
  for (const auto& x : a.boxes())
    for (const auto& y : b.boxes())
      if (auto c = box_intersection(x, y)) boxes.push_back(*c);
  return keep_universe(canonicalize(std::move(boxes), a.dim()), merged_universe(a, b));
}

RegionSet region_diff(const RegionSet& a, const RegionSet& b) {
  check_dim(b.dim(), a.dim(), "diff");
  return keep_universe(diff_closure(a, b), merged_universe(a, b));
}

RegionSet region_complement(const RegionSet& a) {
  if (!a.universe()) fail("complement: region has no universe");
  RegionSet u = canonicalize({*a.universe()}, a.dim()).with_universe(*a.universe());
  return region_diff(u, a);
}

RegionSet region_symm_diff(const RegionSet& a, const RegionSet& b) {
  return region_diff(region_union(a, b), region_intersect(a, b));
}

RegionSet translate(const RegionSet& a, std::span<const double> v, double t) {
  if (static_cast<int>(v.size()) != a.dim()) fail("translate: direction dimension mismatch");
  std::vector<Box> boxes;
  boxes.reserve(a.boxes().size());
  for (const auto& b : a.boxes()) {
    std::vector<Interval> axes;
    axes.reserve(b.axes.size());
    for (int i = 0; i < b.dim(); ++i) {
      const double s = t * v[static_cast<size_t>(i)];
      axes.push_back(Interval(b[i].lo + s, b[i].hi + s));
    }
    boxes.push_back(Box(std::move(axes)));
  }
  // endpoint collisions after rounding can de-canonicalize the list
  RegionSet r = canonicalize(std::move(boxes), a.dim());
  return a.universe() ? r.with_universe(*a.universe()) : r;
}

double volume(const RegionSet& a) {
  if (!a.is_bounded()) fail("volume: unbounded region");
  double v = 0.0;
  for (const auto& b : a.boxes()) v += b.volume();
  return v;
}

namespace {

double perimeter_2d(const RegionSet& a) {
  double p = 0.0;
  for (const auto& b : a.boxes()) {
    const double w = b[0].length(), h = b[1].length();
    if (w > 0.0 && h > 0.0) p += 2.0 * (w + h);
    else p += std::max(w, h);  // segment contributes its own length, point nothing
  }
  // Solid boxes of adjacent slabs can share a face at a breakpoint plane;
  // those overlaps are interior and drop out twice.
  struct Face { double plane; Interval span; bool right; };
  std::vector<Face> faces;
  for (const auto& b : a.boxes()) {
    if (b[0].length() == 0.0 || b[1].length() == 0.0) continue;
    if (b[0].lo > -kInf) faces.push_back({b[0].lo, b[1], false});
    if (b[0].hi < kInf) faces.push_back({b[0].hi, b[1], true});
  }
  for (const auto& f : faces) {
    if (!f.right) continue;
    for (const auto& g : faces) {
      if (g.right || g.plane != f.plane) continue;
      const double lo = std::max(f.span.lo, g.span.lo);
      const double hi = std::min(f.span.hi, g.span.hi);
      if (hi > lo) p -= 2.0 * (hi - lo);
    }
  }
  return p;
}

}  // namespace

double perimeter(const RegionSet& a) {
  if (!a.is_bounded()) fail("perimeter: unbounded region");
  if (a.dim() == 1) {
    double n = 0.0;
    for (const auto& b : a.boxes()) n += b[0].is_point() ? 1.0 : 2.0;
    return n;
  }
  if (a.dim() == 2) return perimeter_2d(a);
  fail("perimeter: only defined for d <= 2");
}

double dist_point_region(std::span<const double> x, const RegionSet& a) {
  if (static_cast<int>(x.size()) != a.dim()) fail("dist_point_region: dimension mismatch");
  if (a.is_empty()) return kInf;
  double best = kInf;
  for (const auto& b : a.boxes()) {
    double s = 0.0;
    for (int i = 0; i < b.dim(); ++i) {
      const double xi = x[static_cast<size_t>(i)];
      const double c = std::min(std::max(xi, b[i].lo), b[i].hi);
      s += (xi - c) * (xi - c);
    }
    best = std::min(best, std::sqrt(s));
  }
  return best;
}

std::vector<double> nearest_point(std::span<const double> x, const RegionSet& a) {
  if (a.is_empty()) fail("nearest_point: empty region");
  if (static_cast<int>(x.size()) != a.dim()) fail("nearest_point: dimension mismatch");
  std::vector<double> best;
  double best_d = kInf;
  for (const auto& b : a.boxes()) {
    std::vector<double> c(x.size());
    double s = 0.0;
    for (int i = 0; i < b.dim(); ++i) {
      const double xi = x[static_cast<size_t>(i)];
      c[static_cast<size_t>(i)] = std::min(std::max(xi, b[i].lo), b[i].hi);
      s += (xi - c[static_cast<size_t>(i)]) * (xi - c[static_cast<size_t>(i)]);
    }
    const double d = std::sqrt(s);
    if (d < best_d || (d == best_d && c < best)) {
      best_d = d;
      best = std::move(c);
    }
  }
  return best;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) fail("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> xs(static_cast<size_t>(n));
  const double span = hi - lo;
  for (int k = 0; k < n; ++k) xs[static_cast<size_t>(k)] = lo + (static_cast<double>(k) * span) / static_cast<double>(n - 1);
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

SampledSet sample_region(const RegionSet& a, double pitch) {
  if (pitch <= 0.0) fail("sample_region: pitch must be positive");
  if (!a.is_bounded()) fail("sample_region: unbounded region");
  SampledSet s;
  s.dim = a.dim();
  s.pitch = pitch;
  for (const auto& b : a.boxes()) {
    std::vector<std::vector<double>> per_axis;
    for (const auto& iv : b.axes) {
      const int n = iv.is_point() ? 1 : std::max(2, static_cast<int>(std::ceil(iv.length() / pitch)) + 1);
      per_axis.push_back(linspace(iv.lo, iv.hi, n));
    }
    std::vector<size_t> idx(per_axis.size(), 0);
    while (true) {
      std::vector<double> pt(per_axis.size());
      for (size_t i = 0; i < per_axis.size(); ++i) pt[i] = per_axis[i][idx[i]];
      s.points.push_back(std::move(pt));
      size_t i = 0;
      for (; i < per_axis.size(); ++i) {
        if (++idx[i] < per_axis[i].size()) break;
        idx[i] = 0;
      }
      if (i == per_axis.size()) break;
    }
  }
  std::sort(s.points.begin(), s.points.end());
  s.points.erase(std::unique(s.points.begin(), s.points.end()), s.points.end());
  return s;
}

SampledSet sampled_union(const SampledSet& a, const SampledSet& b) {
  if (a.dim != b.dim) fail("sampled_union: dimension mismatch");
  SampledSet s;
  s.dim = a.dim;
  s.pitch = std::min(a.pitch, b.pitch);
  s.points = a.points;
  s.points.insert(s.points.end(), b.points.begin(), b.points.end());
  std::sort(s.points.begin(), s.points.end());
  s.points.erase(std::unique(s.points.begin(), s.points.end()), s.points.end());
  return s;
}

bool sampled_equal(const SampledSet& a, const SampledSet& b) {
  return a.dim == b.dim && a.points == b.points;
}

namespace {

double point_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

template <class Loop>
double hausdorff_impl(const SampledSet& a, const SampledSet& b, Loop&& loop) {
  if (a.dim != b.dim) fail("hausdorff: dimension mismatch");
  if (a.points.empty() || b.points.empty()) fail("hausdorff: empty point set");
  auto directed = [&](const SampledSet& from, const SampledSet& to) {
    std::vector<double> mins(from.points.size());
    loop(static_cast<std::int64_t>(from.points.size()), [&](std::int64_t i) {
      double m = kInf;
      for (const auto& q : to.points) m = std::min(m, point_dist(from.points[static_cast<size_t>(i)], q));
      mins[static_cast<size_t>(i)] = m;
    });
    double mx = 0.0;
    for (double m : mins) mx = std::max(mx, m);
    return mx;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

double hausdorff_serial(const SampledSet& a, const SampledSet& b) {
  return hausdorff_impl(a, b, [](std::int64_t n, auto&& body) { serial_for(n, body); });
}

double hausdorff_parallel(const SampledSet& a, const SampledSet& b) {
  return hausdorff_impl(a, b, [](std::int64_t n, auto&& body) { parallel_for(n, body); });
}

double hausdorff(const SampledSet& a, const SampledSet& b) { return hausdorff_parallel(a, b); }

}  // namespace svcalc
