#pragma once

// Product measures on R^d with per-axis densities (standard Gaussian,
// uniform, Lebesgue) evaluated exactly on canonical box unions, plus
// compactly supported test functions integrated by adaptive quadrature.

#include <functional>
#include <vector>

#include "svcalc/setrep.hpp"

namespace svcalc {

enum class DensityKind { gaussian, lebesgue, uniform };

struct AxisDensity {
  DensityKind kind = DensityKind::lebesgue;
  double a = 0.0, b = 1.0;  // uniform support

  double cdf(double x) const;
  double pdf(double x) const;
  bool needs_bounded() const { return kind == DensityKind::lebesgue; }
};

struct MeasureModel {
  std::vector<AxisDensity> axes;

  static MeasureModel gaussian(int dim);
  static MeasureModel lebesgue(int dim);
  static MeasureModel uniform(const std::vector<std::pair<double, double>>& supports);

  int dim() const { return static_cast<int>(axes.size()); }
};

// Exact product-CDF evaluation summed over the canonical decomposition.
double mu(const MeasureModel& m, const RegionSet& a);

// The functional B |-> mu(B intersect A); requires 0 < mu(A) < infinity.
std::function<double(const RegionSet&)> mu_restricted(const MeasureModel& m, const RegionSet& a);

// Smooth bump supported on [center-halfwidth, center+halfwidth]; the
// normalization constant is computed by quadrature when the function is
// built, never hard-coded.
class TestFunction {
 public:
  static TestFunction bump(double center = 0.0, double halfwidth = 1.0, bool mollifier = true);

  double support_lo() const { return center_ - halfwidth_; }
  double support_hi() const { return center_ + halfwidth_; }
  double unnormalized(double x) const;
  double operator()(double x) const;
  double normalization() const { return normalization_; }
  bool is_mollifier() const { return mollifier_; }

 private:
  double center_ = 0.0;
  double halfwidth_ = 1.0;
  bool mollifier_ = true;
  double normalization_ = 1.0;
};

// Integral of f over A (1-D); half-lines are fine since the support is
// compact. Absolute error stays below abs_tol.
double ev(const TestFunction& f, const RegionSet& a, double abs_tol = 1e-10);

}  // namespace svcalc
