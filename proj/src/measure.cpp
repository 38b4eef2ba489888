#include "svcalc/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "svcalc/gauss.hpp"
#include "svcalc/quadrature.hpp"

namespace svcalc {

double AxisDensity::cdf(double x) const {
  switch (kind) {
    case DensityKind::gaussian: return normal_cdf(x);
    case DensityKind::lebesgue: return x;
    case DensityKind::uniform:
      if (x <= a) return 0.0;
      if (x >= b) return 1.0;
      return (x - a) / (b - a);
  }
  return 0.0;
}

double AxisDensity::pdf(double x) const {
  switch (kind) {
    case DensityKind::gaussian: return normal_pdf(x);
    case DensityKind::lebesgue: return 1.0;
    case DensityKind::uniform: return (x >= a && x <= b) ? 1.0 / (b - a) : 0.0;
  }
  return 0.0;
}

MeasureModel MeasureModel::gaussian(int dim) {
  MeasureModel m;
  m.axes.assign(static_cast<size_t>(dim), AxisDensity{DensityKind::gaussian, 0.0, 1.0});
  return m;
}

MeasureModel MeasureModel::lebesgue(int dim) {
  MeasureModel m;
  m.axes.assign(static_cast<size_t>(dim), AxisDensity{DensityKind::lebesgue, 0.0, 1.0});
  return m;
}

MeasureModel MeasureModel::uniform(const std::vector<std::pair<double, double>>& supports) {
  MeasureModel m;
  for (const auto& [a, b] : supports) {
    if (!(a < b)) throw std::invalid_argument("uniform measure: empty support");
    m.axes.push_back(AxisDensity{DensityKind::uniform, a, b});
  }
  return m;
}

double mu(const MeasureModel& m, const RegionSet& a) {
  if (m.dim() != a.dim()) throw std::invalid_argument("mu: dimension mismatch");
  double total = 0.0;
  for (const auto& box : a.boxes()) {
    double term = 1.0;
    for (int i = 0; i < box.dim(); ++i) {
      const AxisDensity& d = m.axes[static_cast<size_t>(i)];
      if (d.needs_bounded() && !box[i].is_bounded())
        throw std::invalid_argument("mu: unbounded set under Lebesgue measure");
      term *= d.cdf(box[i].hi) - d.cdf(box[i].lo);
    }
    total += term;
  }
  return total;
}

std::function<double(const RegionSet&)> mu_restricted(const MeasureModel& m, const RegionSet& a) {
  const double mass = mu(m, a);
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("mu_restricted: restriction set must have finite positive measure");
  return [m, a](const RegionSet& b) { return mu(m, region_intersect(b, a)); };
}

double TestFunction::unnormalized(double x) const {
  const double u = (x - center_) / halfwidth_;
  const double w = 1.0 - u * u;
  if (w <= 0.0) return 0.0;
  return std::exp(-1.0 / w);
}

double TestFunction::operator()(double x) const {
  const double v = unnormalized(x);
  return mollifier_ ? v / normalization_ : v;
}

TestFunction TestFunction::bump(double center, double halfwidth, bool mollifier) {
  if (!(halfwidth > 0.0)) throw std::invalid_argument("bump: halfwidth must be positive");
  TestFunction f;
  f.center_ = center;
  f.halfwidth_ = halfwidth;
  f.mollifier_ = mollifier;
  f.normalization_ =
      integrate([&f](double x) { return f.unnormalized(x); }, f.support_lo(), f.support_hi(), 1e-13)
          .value;
  return f;
}

double ev(const TestFunction& f, const RegionSet& a, double abs_tol) {
  if (a.dim() != 1) throw std::invalid_argument("ev: test functions are one-dimensional");
  double total = 0.0;
  for (const auto& box : a.boxes()) {
    const double lo = std::max(box[0].lo, f.support_lo());
    const double hi = std::min(box[0].hi, f.support_hi());
    if (lo >= hi) continue;
    total += integrate([&f](double x) { return f(x); }, lo, hi, abs_tol).value;
  }
  return total;
}

}  // namespace svcalc
