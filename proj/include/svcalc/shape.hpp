#pragma once

// Eulerian shape derivatives on polygonal shapes: flows x + t V(x) acting on
// vertex chains, shape functionals, and the boundary-flux cross-check.

#include <array>
#include <functional>
#include <vector>

#include "svcalc/svdiff.hpp"

namespace svcalc {

using Point2 = std::array<double, 2>;

class Polygon {
 public:
  // Wants a counterclockwise simple chain of at least three vertices.
  // Clockwise input is rejected, not silently reversed.
  explicit Polygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return verts_; }
  int size() const { return static_cast<int>(verts_.size()); }

  double area() const;       // shoelace
  double perimeter() const;  // edge-length sum
  double diameter() const;   // bounding-box diagonal

  static Polygon regular_ngon(int n, double radius = 1.0, Point2 center = {0.0, 0.0});

  bool operator==(const Polygon& o) const { return verts_ == o.verts_; }

 private:
  std::vector<Point2> verts_;
};

struct VectorField {
  std::function<Point2(Point2)> at;

  static VectorField zero();
  static VectorField radial();    // V(x) = x
  static VectorField rotation();  // V(x, y) = (-y, x)

  // Sampled bound on the differential over the polygon's bounding box.
  double lipschitz_estimate(const Polygon& domain_hint) const;
};

VectorField scaled_field(const VectorField& v, double factor);
VectorField sum_field(const VectorField& a, const VectorField& b);

struct FlowMap {
  std::function<Point2(Point2)> field;
  double t = 0.0;
  bool injectivity_warning = false;  // set when |t| * Lip(V) reaches 1

  Point2 operator()(Point2 x) const {
    const Point2 v = field(x);
    return {x[0] + t * v[0], x[1] + t * v[1]};
  }
};

FlowMap flow_map(const VectorField& v, double t, double lipschitz_hint);

// Vertex-wise image under x + t V(x); edges are subdivided before mapping
// until every image chord is at most max_edge (0 picks the default, the
// shape diameter over 256 * 2 pi). The image chain is validated again.
Polygon deform(const Polygon& omega, const VectorField& v, double t, double max_edge = 0.0);

struct ShapeFunctional {
  enum class Kind { volume, perimeter, integral };
  Kind kind = Kind::volume;
  std::function<double(Point2)> integrand;  // for Kind::integral

  static ShapeFunctional volume() { return {Kind::volume, {}}; }
  static ShapeFunctional perimeter() { return {Kind::perimeter, {}}; }
  static ShapeFunctional integral(std::function<double(Point2)> f) {
    return {Kind::integral, std::move(f)};
  }
};

double evaluate(const ShapeFunctional& j, const Polygon& omega, double tol = 1e-8);

// One-sided derivative of t |-> J(F_t(omega)); a central variant sits behind
// the two_sided flag for symmetric fields.
PathDiffResult eulerian_derivative(const ShapeFunctional& j, const Polygon& omega,
                                   const VectorField& v,
                                   const DiffSchedule& sched = DiffSchedule::geometric(0.05, 6),
                                   bool two_sided = false, double max_edge = 0.0);

// Midpoint quadrature of V . n over the boundary; for J = volume this is the
// classical boundary-flux form of the same derivative.
double hadamard_boundary_integral(const Polygon& omega, const VectorField& v);

// Grid sample of the polygon interior (closed membership on the boundary),
// for handing deformed shapes to the measure machinery.
SampledSet sample_polygon(const Polygon& omega, double pitch);
bool polygon_contains(const Polygon& omega, Point2 p);

}  // namespace svcalc
