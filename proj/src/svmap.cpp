#include "svcalc/svmap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "svcalc/parallel.hpp"

namespace svcalc {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
}  // namespace

ParamDomain ParamDomain::line(double lo_, double hi_, int n) {
  ParamDomain d;
  d.lo = {lo_};
  d.hi = {hi_};
  d.points = {n};
  d.validate();
  return d;
}

ParamDomain ParamDomain::from_pitch(std::vector<double> lo_, std::vector<double> hi_,
                                    double pitch) {
  if (!(pitch > 0.0)) fail("ParamDomain: pitch must be positive");
  ParamDomain d;
  d.lo = std::move(lo_);
  d.hi = std::move(hi_);
  for (size_t i = 0; i < d.lo.size(); ++i) {
    const double len = d.hi[i] - d.lo[i];
    d.points.push_back(std::max(2, static_cast<int>(std::ceil(len / pitch)) + 1));
  }
  d.validate();
  return d;
}

void ParamDomain::validate() const {
  if (lo.empty() || lo.size() != hi.size() || lo.size() != points.size())
    fail("ParamDomain: inconsistent axis data");
  for (size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(lo[i] < hi[i]))
      fail("ParamDomain: bounds must be finite with lo < hi");
    if (points[i] < 2) fail("ParamDomain: need at least two samples per axis");
  }
}

double ParamDomain::pitch(int axis) const {
  return (hi[static_cast<size_t>(axis)] - lo[static_cast<size_t>(axis)]) /
         (points[static_cast<size_t>(axis)] - 1);
}

size_t ParamDomain::grid_size() const {
  size_t n = 1;
  for (int p : points) n *= static_cast<size_t>(p);
  return n;
}

std::vector<std::vector<double>> ParamDomain::grid() const {
  std::vector<std::vector<double>> axes;
  for (size_t i = 0; i < lo.size(); ++i) axes.push_back(linspace(lo[i], hi[i], points[i]));
  std::vector<std::vector<double>> out;
  out.reserve(grid_size());
  std::vector<size_t> idx(axes.size(), 0);
  while (true) {
    std::vector<double> pt(axes.size());
    for (size_t i = 0; i < axes.size(); ++i) pt[i] = axes[i][idx[i]];
    out.push_back(std::move(pt));
    // row-major: last axis fastest
    size_t i = axes.size();
    while (i > 0) {
      --i;
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

std::vector<size_t> ParamDomain::neighbors(size_t flat) const {
  std::vector<size_t> strides(points.size(), 1);
  for (size_t i = points.size(); i-- > 1;)
    strides[i - 1] = strides[i] * static_cast<size_t>(points[i]);
  std::vector<size_t> out;
  for (size_t i = 0; i < points.size(); ++i) {
    const size_t coord = (flat / strides[i]) % static_cast<size_t>(points[i]);
    if (coord > 0) out.push_back(flat - strides[i]);
    if (coord + 1 < static_cast<size_t>(points[i])) out.push_back(flat + strides[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SetPlot interval_map(std::function<double(double)> f, std::function<double(double)> g,
                     ParamDomain dom) {
  dom.validate();
  if (dom.dim() != 1) fail("interval_map: expects a one-dimensional domain");
  if (!f || !g) fail("interval_map: missing endpoint function");
  SetPlot p;
  p.domain = std::move(dom);
  p.target_dim = 1;
  p.kind = PlotKind::interval_map;
  p.f = std::move(f);
  p.g = std::move(g);
  auto fc = p.f, gc = p.g;
  p.eval = [fc, gc](std::span<const double> r) {
    const double a = fc(r[0]), b = gc(r[0]);
    return RegionSet::interval(std::min(a, b), std::max(a, b));
  };
  return p;
}

SetPlot constant_plot(RegionSet value, ParamDomain dom) {
  dom.validate();
  SetPlot p;
  p.domain = std::move(dom);
  p.target_dim = value.dim();
  p.kind = PlotKind::constant;
  p.eval = [value](std::span<const double>) { return value; };
  return p;
}

SetPlot translate_family(RegionSet base, std::vector<double> v,
                         std::function<double(double)> profile, ParamDomain dom) {
  dom.validate();
  if (dom.dim() != 1) fail("translate_family: expects a one-dimensional domain");
  if (static_cast<int>(v.size()) != base.dim()) fail("translate_family: direction dimension mismatch");
  if (!profile) fail("translate_family: missing profile");
  SetPlot p;
  p.domain = std::move(dom);
  p.target_dim = base.dim();
  p.kind = PlotKind::translate_family;
  p.eval = [base, v, profile](std::span<const double> r) {
    return translate(base, v, profile(r[0]));
  };
  return p;
}

namespace {

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

Selection make_selection(const SetPlot& p, std::vector<double> r0, std::vector<double> x0) {
  Selection s;
  s.anchor_param = std::move(r0);
  s.anchor_value = std::move(x0);
  s.params = p.domain.grid();
  return s;
}

void finish_residuals(Selection& s) {
  s.max_residual = 0.0;
  for (double r : s.residuals) s.max_residual = std::max(s.max_residual, r);
}

size_t nearest_grid_index(const std::vector<std::vector<double>>& grid,
                          std::span<const double> r0) {
  size_t best = 0;
  double best_d = kInf;
  for (size_t i = 0; i < grid.size(); ++i) {
    double d = 0.0;
    for (size_t k = 0; k < grid[i].size(); ++k) d += (grid[i][k] - r0[k]) * (grid[i][k] - r0[k]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

Selection select(const SetPlot& p, std::span<const double> r0, std::span<const double> x0,
                 SelectStrategy strategy) {
  if (static_cast<int>(r0.size()) != p.domain.dim()) fail("select: r0 dimension mismatch");
  if (static_cast<int>(x0.size()) != p.target_dim) fail("select: x0 dimension mismatch");
  RegionSet at0 = p.eval(r0);
  if (!at0.contains(x0)) fail("select: x0 is not a member of P(r0)");

  Selection s = make_selection(p, {r0.begin(), r0.end()}, {x0.begin(), x0.end()});

  if (strategy == SelectStrategy::convex) {
    if (p.kind != PlotKind::interval_map)
      fail("select: convex strategy requires an interval map");
    const double f0 = p.f(r0[0]), g0 = p.g(r0[0]);
    const bool flat = f0 == g0;
    // sigma(r) = t0 f(r) + (1 - t0) g(r); anchored exactly at x0 by
    // construction, clamped into the interval to keep zero residual where
    // rounding would spill past an endpoint
    const double t0 = flat ? 1.0 : clamp((x0[0] - g0) / (f0 - g0), 0.0, 1.0);
    for (const auto& r : s.params) {
      const double fr = p.f(r[0]), gr = p.g(r[0]);
      double val;
      if (r == s.anchor_param) val = x0[0];
      else if (flat) val = fr;
      else val = clamp(t0 * fr + (1.0 - t0) * gr, std::min(fr, gr), std::max(fr, gr));
      s.values.push_back({val});
      s.residuals.push_back(dist_point_region(s.values.back(), p.eval(r)));
    }
    finish_residuals(s);
    return s;
  }

  // projection tracking: breadth-first from the grid point nearest the
  // anchor, continuing each step from the already-selected neighbour
  const auto& grid = s.params;
  const size_t start = nearest_grid_index(grid, r0);
  std::vector<std::vector<double>> values(grid.size());
  std::vector<double> residuals(grid.size(), kInf);
  std::vector<char> done(grid.size(), 0);
  std::vector<size_t> queue;

  RegionSet at_start = p.eval(grid[start]);
  values[start] = at_start.is_empty() ? std::vector<double>(x0.begin(), x0.end())
                                      : nearest_point(x0, at_start);
  residuals[start] = at_start.is_empty() ? kInf : 0.0;
  done[start] = 1;
  queue.push_back(start);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const size_t cur = queue[qi];
    for (size_t nb : p.domain.neighbors(cur)) {
      if (done[nb]) continue;
      RegionSet val = p.eval(grid[nb]);
      if (val.is_empty()) {
        values[nb] = values[cur];
        residuals[nb] = kInf;
      } else {
        values[nb] = nearest_point(values[cur], val);
        residuals[nb] = 0.0;
      }
      done[nb] = 1;
      queue.push_back(nb);
    }
  }
  s.values = std::move(values);
  s.residuals = std::move(residuals);
  finish_residuals(s);
  return s;
}

Selection select(const SetPlot& p, double r0, double x0, SelectStrategy strategy) {
  return select(p, std::span<const double>(&r0, 1), std::span<const double>(&x0, 1), strategy);
}

Selection weak_select(const SetPlot& p, std::span<const double> r0) {
  if (static_cast<int>(r0.size()) != p.domain.dim()) fail("weak_select: r0 dimension mismatch");
  RegionSet at0 = p.eval(r0);
  if (at0.is_empty()) fail("weak_select: P(r0) is empty");

  auto box_mid = [](const Box& b) {
    std::vector<double> m(static_cast<size_t>(b.dim()));
    for (int i = 0; i < b.dim(); ++i) m[static_cast<size_t>(i)] = b[i].midpoint();
    return m;
  };
  const std::vector<double> seed = box_mid(at0.boxes().front());

  Selection s = make_selection(p, {r0.begin(), r0.end()}, seed);
  for (const auto& r : s.params) {
    RegionSet val = p.eval(r);
    if (val.is_empty()) {
      s.values.push_back(seed);
      s.residuals.push_back(kInf);
      continue;
    }
    const Box* best = &val.boxes().front();
    double best_d = kInf;
    for (const auto& b : val.boxes()) {
      double d = 0.0;
      for (int i = 0; i < b.dim(); ++i) {
        const double c = clamp(seed[static_cast<size_t>(i)], b[i].lo, b[i].hi);
        d += (seed[static_cast<size_t>(i)] - c) * (seed[static_cast<size_t>(i)] - c);
      }
      if (d < best_d) {
        best_d = d;
        best = &b;
      }
    }
    s.values.push_back(box_mid(*best));
    s.residuals.push_back(dist_point_region(s.values.back(), val));
  }
  finish_residuals(s);
  return s;
}

Selection weak_select(const SetPlot& p, double r0) {
  return weak_select(p, std::span<const double>(&r0, 1));
}

namespace {

// closed box meets the interior of an open box
bool meets_open(const Box& b, const Box& open) {
  for (int i = 0; i < b.dim(); ++i)
    if (!(b[i].lo < open[i].hi && open[i].lo < b[i].hi)) return false;
  return true;
}

bool region_meets_open(const RegionSet& r, const Box& open) {
  for (const auto& b : r.boxes())
    if (meets_open(b, open)) return true;
  return false;
}

// one interior witness per region box that meets the open box
std::vector<std::vector<double>> open_witnesses(const RegionSet& r, const Box& open) {
  std::vector<std::vector<double>> out;
  for (const auto& b : r.boxes()) {
    if (!meets_open(b, open)) continue;
    std::vector<double> w(static_cast<size_t>(b.dim()));
    for (int i = 0; i < b.dim(); ++i)
      w[static_cast<size_t>(i)] =
          Interval(std::max(b[i].lo, open[i].lo), std::min(b[i].hi, open[i].hi)).midpoint();
    out.push_back(std::move(w));
  }
  return out;
}

template <class Loop>
LscReport lsc_check_impl(const SetPlot& phi, const std::vector<OpenBox>& opens, double slope_tol,
                         Loop&& loop) {
  phi.domain.validate();
  if (!(slope_tol > 0.0)) fail("lsc_check: slope tolerance must be positive");
  for (const auto& o : opens)
    if (o.box.dim() != phi.target_dim) fail("lsc_check: open box dimension mismatch");

  const auto grid = phi.domain.grid();
  double max_pitch = 0.0;
  for (int a = 0; a < phi.domain.dim(); ++a) max_pitch = std::max(max_pitch, phi.domain.pitch(a));

  std::vector<RegionSet> vals(grid.size());
  loop(static_cast<std::int64_t>(grid.size()),
       [&](std::int64_t i) { vals[static_cast<size_t>(i)] = phi.eval(grid[static_cast<size_t>(i)]); });

  struct Hit {
    std::vector<LscViolation> confirmed, boundary;
  };
  std::vector<Hit> hits(grid.size());
  loop(static_cast<std::int64_t>(grid.size()), [&](std::int64_t ii) {
    const size_t i = static_cast<size_t>(ii);
    for (size_t oi = 0; oi < opens.size(); ++oi) {
      const Box& o = opens[oi].box;
      if (!region_meets_open(vals[i], o)) continue;
      const auto witnesses = open_witnesses(vals[i], o);
      for (size_t nb : phi.domain.neighbors(i)) {
        if (region_meets_open(vals[nb], o)) continue;
        double gap = 0.0;
        for (const auto& w : witnesses) gap = std::max(gap, dist_point_region(w, vals[nb]));
        LscViolation v{i, grid[i], oi, grid[nb], gap};
        if (gap > slope_tol * max_pitch) hits[i].confirmed.push_back(std::move(v));
        else hits[i].boundary.push_back(std::move(v));
      }
    }
  });

  LscReport rep;
  rep.grid_points = grid.size();
  rep.opens = opens.size();
  rep.slope_tol = slope_tol;
  for (auto& h : hits) {
    rep.violations.insert(rep.violations.end(), h.confirmed.begin(), h.confirmed.end());
    rep.boundary_misses.insert(rep.boundary_misses.end(), h.boundary.begin(), h.boundary.end());
  }
  return rep;
}

}  // namespace

LscReport lsc_check_serial(const SetPlot& phi, const std::vector<OpenBox>& opens,
                           double slope_tol) {
  return lsc_check_impl(phi, opens, slope_tol,
                        [](std::int64_t n, auto&& body) { serial_for(n, body); });
}

LscReport lsc_check_parallel(const SetPlot& phi, const std::vector<OpenBox>& opens,
                             double slope_tol) {
  return lsc_check_impl(phi, opens, slope_tol,
                        [](std::int64_t n, auto&& body) { parallel_for(n, body); });
}

LscReport lsc_check(const SetPlot& phi, const std::vector<OpenBox>& opens, double slope_tol) {
  return lsc_check_parallel(phi, opens, slope_tol);
}

Relation graph(const SetPlot& phi, double value_pitch) {
  phi.domain.validate();
  if (!(value_pitch > 0.0)) fail("graph: value pitch must be positive");
  Relation rel;
  rel.dim_x = phi.domain.dim();
  rel.dim_y = phi.target_dim;
  for (const auto& r : phi.domain.grid()) {
    RegionSet val = phi.eval(r);
    if (val.is_empty()) continue;
    for (auto& y : sample_region(val, value_pitch).points) rel.pairs.emplace_back(r, std::move(y));
  }
  return rel;
}

SetPlot from_relation(const Relation& rel, ParamDomain dom) {
  if (rel.pairs.empty()) fail("from_relation: empty relation");
  dom.validate();
  if (dom.dim() != rel.dim_x) fail("from_relation: domain dimension mismatch");

  auto slices = std::make_shared<std::map<std::vector<double>, std::vector<Box>>>();
  for (const auto& [x, y] : rel.pairs) {
    std::vector<Interval> axes;
    for (double c : y) axes.push_back(Interval::point(c));
    (*slices)[x].push_back(Box(std::move(axes)));
  }

  SetPlot p;
  p.domain = std::move(dom);
  p.target_dim = rel.dim_y;
  p.kind = PlotKind::sampled;
  const int dim_y = rel.dim_y;
  p.eval = [slices, dim_y](std::span<const double> r) {
    std::vector<double> key(r.begin(), r.end());
    auto it = slices->find(key);
    if (it == slices->end()) {
      // nearest sampled slice keeps the plot total on the domain
      double best = kInf;
      for (auto jt = slices->begin(); jt != slices->end(); ++jt) {
        double d = 0.0;
        for (size_t k = 0; k < key.size(); ++k) d += (jt->first[k] - key[k]) * (jt->first[k] - key[k]);
        if (d < best) {
          best = d;
          it = jt;
        }
      }
    }
    return RegionSet::of(dim_y, it->second);
  };
  return p;
}

namespace {
RegionSet points_to_region(const std::vector<std::vector<double>>& pts, int dim) {
  std::vector<Box> boxes;
  boxes.reserve(pts.size());
  for (const auto& p : pts) {
    std::vector<Interval> axes;
    for (double c : p) axes.push_back(Interval::point(c));
    boxes.push_back(Box(std::move(axes)));
  }
  return RegionSet::of(dim, std::move(boxes));
}
}  // namespace

RegionSet def_set(const Relation& rel) {
  if (rel.pairs.empty()) fail("def_set: empty relation");
  std::vector<std::vector<double>> xs;
  for (const auto& [x, y] : rel.pairs) xs.push_back(x);
  return points_to_region(xs, rel.dim_x);
}

RegionSet image_set(const Relation& rel) {
  if (rel.pairs.empty()) fail("image_set: empty relation");
  std::vector<std::vector<double>> ys;
  for (const auto& [x, y] : rel.pairs) ys.push_back(y);
  return points_to_region(ys, rel.dim_y);
}

RegionSet extend(const SetPlot& phi, const RegionSet& a, double pitch) {
  if (a.dim() != phi.domain.dim()) fail("extend: argument dimension mismatch");
  if (!a.is_bounded()) fail("extend: argument must be bounded");
  if (a.is_empty()) return RegionSet::empty(phi.target_dim);
  std::vector<Box> boxes;
  for (const auto& x : sample_region(a, pitch).points) {
    RegionSet val = phi.eval(x);
    boxes.insert(boxes.end(), val.boxes().begin(), val.boxes().end());
  }
  return RegionSet::of(phi.target_dim, std::move(boxes));
}

SmoothMap SmoothMap::identity(int dim) {
  SmoothMap m;
  m.dim_in = m.dim_out = dim;
  m.eval = [](std::span<const double> x) { return std::vector<double>(x.begin(), x.end()); };
  m.diag_affine = {{std::vector<double>(static_cast<size_t>(dim), 1.0),
                    std::vector<double>(static_cast<size_t>(dim), 0.0)}};
  return m;
}

SmoothMap SmoothMap::scalar(std::function<double(double)> f) {
  if (!f) fail("SmoothMap::scalar: missing function");
  SmoothMap m;
  m.eval = [f](std::span<const double> x) { return std::vector<double>{f(x[0])}; };
  return m;
}

SmoothMap SmoothMap::diag(std::vector<double> scale, std::vector<double> offset) {
  if (scale.size() != offset.size() || scale.empty()) fail("SmoothMap::diag: bad coefficients");
  SmoothMap m;
  m.dim_in = m.dim_out = static_cast<int>(scale.size());
  m.eval = [scale, offset](std::span<const double> x) {
    std::vector<double> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = scale[i] * x[i] + offset[i];
    return y;
  };
  m.diag_affine = {{scale, offset}};
  return m;
}

SmoothMap SmoothMap::compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (outer.dim_in != inner.dim_out) fail("SmoothMap::compose: dimension mismatch");
  SmoothMap m;
  m.dim_in = inner.dim_in;
  m.dim_out = outer.dim_out;
  auto oe = outer.eval, ie = inner.eval;
  m.eval = [oe, ie](std::span<const double> x) { return oe(ie(x)); };
  return m;
}

SampledSet pushforward(const SmoothMap& f, const SampledSet& a) {
  if (f.dim_in != a.dim) fail("pushforward: dimension mismatch");
  SampledSet out;
  out.dim = f.dim_out;
  out.pitch = a.pitch;
  out.points.reserve(a.points.size());
  for (const auto& p : a.points) out.points.push_back(f.eval(p));
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  return out;
}

SampledSet pushforward(const SmoothMap& f, const RegionSet& a, double pitch) {
  return pushforward(f, sample_region(a, pitch));
}

SetPlot pushforward(const SmoothMap& f, const SetPlot& p, double pitch) {
  if (f.dim_in != p.target_dim) fail("pushforward: plot target dimension mismatch");
  if (!(pitch > 0.0)) fail("pushforward: pitch must be positive");
  SetPlot out;
  out.domain = p.domain;
  out.target_dim = f.dim_out;
  out.kind = PlotKind::sampled;
  auto inner = p.eval;
  const int dim_out = f.dim_out;
  out.eval = [f, inner, pitch, dim_out](std::span<const double> r) {
    RegionSet val = inner(r);
    if (val.is_empty()) return RegionSet::empty(dim_out);
    std::vector<Box> boxes;
    for (const auto& y : pushforward(f, val, pitch).points) {
      std::vector<Interval> axes;
      for (double c : y) axes.push_back(Interval::point(c));
      boxes.push_back(Box(std::move(axes)));
    }
    return RegionSet::of(dim_out, std::move(boxes));
  };
  return out;
}

RegionSet pushforward_exact(const SmoothMap& f, const RegionSet& a) {
  if (!f.diag_affine) fail("pushforward_exact: map is not diagonal-affine");
  if (f.dim_in != a.dim()) fail("pushforward_exact: dimension mismatch");
  const auto& [scale, offset] = *f.diag_affine;
  std::vector<Box> boxes;
  for (const auto& b : a.boxes()) {
    std::vector<Interval> axes;
    for (int i = 0; i < b.dim(); ++i) {
      const size_t k = static_cast<size_t>(i);
      double u = scale[k] * b[i].lo + offset[k];
      double v = scale[k] * b[i].hi + offset[k];
      if (u > v) std::swap(u, v);
      axes.push_back(Interval(u, v));
    }
    boxes.push_back(Box(std::move(axes)));
  }
  return RegionSet::of(a.dim(), std::move(boxes));
}

}  // namespace svcalc
