#include "svcalc/shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace svcalc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double cross(Point2 o, Point2 a, Point2 b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double dist(Point2 a, Point2 b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

// closed segment intersection test, collinear overlaps included
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * s;
}

void check_simple(const std::vector<Point2>& v) {
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2 a = v[i], b = v[(i + 1) % n];
    if (a == b) fail("polygon: zero-length edge at vertex " + std::to_string(i));
    // adjacent edges may only meet at the shared vertex; a collinear
    // reversal doubles back over the previous edge
    const Point2 c = v[(i + 2) % n];
    if (cross(a, b, c) == 0.0) {
      const double along = (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]);
      if (along < 0.0)
        fail("polygon: edges " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
             " cross (fold-back)");
    }
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      // skip pairs sharing a vertex
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        fail("polygon: edges " + std::to_string(i) + " and " + std::to_string(j) + " cross");
    }
  }
}

}  // namespace

Polygon::Polygon(std::vector<Point2> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() < 3) fail("polygon: needs at least three vertices");
  const double a = signed_area(verts_);
  if (a == 0.0) fail("polygon: degenerate (zero area)");
  if (a < 0.0) fail("polygon: clockwise orientation rejected");
  check_simple(verts_);
}

double Polygon::area() const { return signed_area(verts_); }

double Polygon::perimeter() const {
  double p = 0.0;
  for (size_t i = 0; i < verts_.size(); ++i) p += dist(verts_[i], verts_[(i + 1) % verts_.size()]);
  return p;
}

double Polygon::diameter() const {
  double lo0 = verts_[0][0], hi0 = lo0, lo1 = verts_[0][1], hi1 = lo1;
  for (const auto& p : verts_) {
    lo0 = std::min(lo0, p[0]);
    hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]);
    hi1 = std::max(hi1, p[1]);
  }
  return std::hypot(hi0 - lo0, hi1 - lo1);
}

Polygon Polygon::regular_ngon(int n, double radius, Point2 center) {
  if (n < 3) fail("regular_ngon: needs n >= 3");
  std::vector<Point2> v;
  v.reserve(static_cast<size_t>(n));
  constexpr double two_pi = 6.28318530717958647692;
  for (int k = 0; k < n; ++k) {
    const double th = two_pi * k / n;
    v.push_back({center[0] + radius * std::cos(th), center[1] + radius * std::sin(th)});
  }
  return Polygon(std::move(v));
}

VectorField VectorField::zero() {
  return {[](Point2) { return Point2{0.0, 0.0}; }};
}

VectorField VectorField::radial() {
  return {[](Point2 x) { return x; }};
}

VectorField VectorField::rotation() {
  return {[](Point2 x) { return Point2{-x[1], x[0]}; }};
}

VectorField scaled_field(const VectorField& v, double factor) {
  auto at = v.at;
  return {[at, factor](Point2 x) {
    const Point2 w = at(x);
    return Point2{factor * w[0], factor * w[1]};
  }};
}

VectorField sum_field(const VectorField& a, const VectorField& b) {
  auto fa = a.at, fb = b.at;
  return {[fa, fb](Point2 x) {
    const Point2 u = fa(x), w = fb(x);
    return Point2{u[0] + w[0], u[1] + w[1]};
  }};
}

double VectorField::lipschitz_estimate(const Polygon& domain_hint) const {
  double lo0 = kInf, hi0 = -kInf, lo1 = kInf, hi1 = -kInf;
  for (const auto& p : domain_hint.vertices()) {
    lo0 = std::min(lo0, p[0]);
    hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]);
    hi1 = std::max(hi1, p[1]);
  }
  const double h = std::max(hi0 - lo0, hi1 - lo1) / 64.0;
  if (!(h > 0.0)) return 0.0;
  double lip = 0.0;
  const int n = 17;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Point2 x{lo0 + (hi0 - lo0) * i / (n - 1), lo1 + (hi1 - lo1) * j / (n - 1)};
      const Point2 v0 = at(x);
      for (const Point2 dx : {Point2{h, 0.0}, Point2{0.0, h}}) {
        const Point2 v1 = at({x[0] + dx[0], x[1] + dx[1]});
        lip = std::max(lip, std::hypot(v1[0] - v0[0], v1[1] - v0[1]) / h);
      }
    }
  }
  return lip;
}

FlowMap flow_map(const VectorField& v, double t, double lipschitz_hint) {
  if (!v.at) fail("flow_map: missing field evaluator");
  FlowMap f;
  f.field = v.at;
  f.t = t;
  f.injectivity_warning = std::fabs(t) * lipschitz_hint >= 1.0;
  return f;
}

Polygon deform(const Polygon& omega, const VectorField& v, double t, double max_edge) {
  if (!v.at) fail("deform: missing field evaluator");
  if (t == 0.0) return omega;
  if (max_edge == 0.0) max_edge = omega.diameter() * 6.28318530717958647692 / 256.0;
  if (!(max_edge > 0.0)) fail("deform: max edge length must be positive");

  auto image = [&](Point2 x) {
    const Point2 w = v.at(x);
    return Point2{x[0] + t * w[0], x[1] + t * w[1]};
  };

  std::vector<Point2> out;
  const auto& verts = omega.vertices();
  const size_t n = verts.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2 a = verts[i], b = verts[(i + 1) % n];
    int pieces = 1;
    std::vector<Point2> mapped;
    for (; pieces <= 4096; pieces *= 2) {
      mapped.clear();
      double worst = 0.0;
      for (int k = 0; k <= pieces; ++k) {
        const double s = static_cast<double>(k) / pieces;
        const Point2 p{a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])};
        mapped.push_back(image(p));
        if (k > 0) worst = std::max(worst, dist(mapped[static_cast<size_t>(k) - 1], mapped.back()));
      }
      if (worst <= max_edge) break;
    }
    mapped.pop_back();  // closing point is the next edge's start
    out.insert(out.end(), mapped.begin(), mapped.end());
  }
  return Polygon(std::move(out));
}

namespace {

double triangle_quad(const std::function<double(Point2)>& f, Point2 a, Point2 b, Point2 c,
                     double tol, int depth) {
  const double area2 = cross(a, b, c);  // twice the signed area
  const Point2 centroid{(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0};
  const double coarse = 0.5 * area2 * f(centroid);
  if (depth >= 12) return coarse;
  const Point2 ab{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
  const Point2 bc{0.5 * (b[0] + c[0]), 0.5 * (b[1] + c[1])};
  const Point2 ca{0.5 * (c[0] + a[0]), 0.5 * (c[1] + a[1])};
  const double fine = 0.5 * (cross(a, ab, ca) * f({(a[0] + ab[0] + ca[0]) / 3.0, (a[1] + ab[1] + ca[1]) / 3.0}) +
                             cross(ab, b, bc) * f({(ab[0] + b[0] + bc[0]) / 3.0, (ab[1] + b[1] + bc[1]) / 3.0}) +
                             cross(ca, bc, c) * f({(ca[0] + bc[0] + c[0]) / 3.0, (ca[1] + bc[1] + c[1]) / 3.0}) +
                             cross(ab, bc, ca) * f({(ab[0] + bc[0] + ca[0]) / 3.0, (ab[1] + bc[1] + ca[1]) / 3.0}));
  if (std::fabs(fine - coarse) <= tol) return fine;
  double s = 0.0;
  s += triangle_quad(f, a, ab, ca, 0.25 * tol, depth + 1);
  s += triangle_quad(f, ab, b, bc, 0.25 * tol, depth + 1);
  s += triangle_quad(f, ca, bc, c, 0.25 * tol, depth + 1);
  s += triangle_quad(f, ab, bc, ca, 0.25 * tol, depth + 1);
  return s;
}

}  // namespace

double evaluate(const ShapeFunctional& j, const Polygon& omega, double tol) {
  switch (j.kind) {
    case ShapeFunctional::Kind::volume: return omega.area();
    case ShapeFunctional::Kind::perimeter: return omega.perimeter();
    case ShapeFunctional::Kind::integral: {
      if (!j.integrand) fail("evaluate: integral functional without integrand");
      // signed fan triangulation from the first vertex; overlaps cancel
      const auto& v = omega.vertices();
      double s = 0.0;
      const double share = tol / static_cast<double>(v.size());
      for (size_t i = 1; i + 1 < v.size(); ++i)
        s += triangle_quad(j.integrand, v[0], v[i], v[i + 1], share, 0);
      return s;
    }
  }
  return 0.0;
}

PathDiffResult eulerian_derivative(const ShapeFunctional& j, const Polygon& omega,
                                   const VectorField& v, const DiffSchedule& sched,
                                   bool two_sided, double max_edge) {
  sched.validate();
  auto value_at = [&](double t) { return evaluate(j, deform(omega, v, t, max_edge)); };
  if (!two_sided) return path_diff_values(value_at, sched);

  PathDiffResult r;
  r.steps = sched.steps;
  for (double t : sched.steps) r.quotients.push_back((value_at(t) - value_at(-t)) / (2.0 * t));
  r.table = richardson(r.quotients, r.steps, 2);
  r.estimate = r.table.estimate;
  r.err_estimate = r.table.err_estimate;
  r.converged = r.err_estimate <= sched.converge_tol * std::max(1.0, std::fabs(r.estimate));
  return r;
}

bool polygon_contains(const Polygon& omega, Point2 p) {
  const auto& verts = omega.vertices();
  const size_t n = verts.size();
  bool inside = false;
  for (size_t i = 0; i < n; ++i) {
    const Point2 a = verts[i], b = verts[(i + 1) % n];
    if (cross(a, b, p) == 0.0 && on_segment(a, b, p)) return true;  // boundary counts
    if ((a[1] > p[1]) != (b[1] > p[1])) {
      const double xcut = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
      if (p[0] < xcut) inside = !inside;
    }
  }
  return inside;
}

SampledSet sample_polygon(const Polygon& omega, double pitch) {
  if (!(pitch > 0.0)) fail("sample_polygon: pitch must be positive");
  double lo0 = kInf, hi0 = -kInf, lo1 = kInf, hi1 = -kInf;
  for (const auto& p : omega.vertices()) {
    lo0 = std::min(lo0, p[0]);
    hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]);
    hi1 = std::max(hi1, p[1]);
  }
  const int nx = std::max(2, static_cast<int>(std::ceil((hi0 - lo0) / pitch)) + 1);
  const int ny = std::max(2, static_cast<int>(std::ceil((hi1 - lo1) / pitch)) + 1);
  SampledSet s;
  s.dim = 2;
  s.pitch = pitch;
  for (int i = 0; i < nx; ++i) {
    const double x = lo0 + (static_cast<double>(i) * (hi0 - lo0)) / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double y = lo1 + (static_cast<double>(j) * (hi1 - lo1)) / (ny - 1);
      if (polygon_contains(omega, {x, y})) s.points.push_back({x, y});
    }
  }
  if (s.points.empty()) fail("sample_polygon: pitch too coarse for this shape");
  std::sort(s.points.begin(), s.points.end());
  return s;
}

double hadamard_boundary_integral(const Polygon& omega, const VectorField& v) {
  if (!v.at) fail("hadamard_boundary_integral: missing field evaluator");
  const auto& verts = omega.vertices();
  const size_t n = verts.size();
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Point2 a = verts[i], b = verts[(i + 1) % n];
    const Point2 mid{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
    const Point2 w = v.at(mid);
    // outward normal of a counterclockwise edge times its length
    s += w[0] * (b[1] - a[1]) - w[1] * (b[0] - a[0]);
  }
  return s;
}

}  // namespace svcalc
