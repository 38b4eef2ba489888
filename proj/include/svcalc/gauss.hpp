#pragma once

// Error function and standard normal distribution helpers. The rational
// approximations follow W. J. Cody's three-region scheme; absolute error is
// below 1e-15 on the real line (validated against the quadrature oracle in
// the test suite, well inside the 1e-10 budget the measure module needs).

namespace svcalc {

double erf_approx(double x);
double erfc_approx(double x);

double normal_cdf(double x);
double normal_pdf(double x);

}  // namespace svcalc
