#pragma once

// Adaptive quadrature on finite intervals: an embedded Gauss 7/15 pair with
// bisection refinement. Callers split at box boundaries and support
// endpoints, so integrands are smooth inside every segment handed in.

#include <functional>

namespace svcalc {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated local error estimates
  int segments = 0;    // leaf intervals evaluated
};

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10);

}  // namespace svcalc
