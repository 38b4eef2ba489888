#include "svcalc/gauss.hpp"

#include <cmath>

namespace svcalc {

namespace {

// Cody's rational coefficient set (netlib specfun CALERF).
constexpr double A[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                         3209.37758913846947, .185777706184603153};
constexpr double B[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                         2844.23683343917062};
constexpr double C[9] = {.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                         298.635138197400131, 881.95222124176909,  1712.04761263407058,
                         2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
constexpr double D[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                         1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                         3439.36767414372164, 1230.33935480374942};
constexpr double P[6] = {.305326634961232344, .360344899949804439,  .125781726111229246,
                         .0160837851487422766, 6.58749161529837803e-4, .0163153871373020978};
constexpr double Q[5] = {2.56852019228982242, 1.87295284992346047, .527905102951428412,
                         .0605183413124413191, .00233520497626869185};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kThresh = 0.46875;
constexpr double kErfcBig = 26.543;  // erfc underflows beyond this

// erfc(y) for y > kThresh via the two outer regions.
double erfc_tail(double y) {
  if (y > kErfcBig) return 0.0;
  double result;
  if (y <= 4.0) {
    double xnum = C[8] * y, xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + C[i]) * y;
      xden = (xden + D[i]) * y;
    }
    result = (xnum + C[7]) / (xden + D[7]);
  } else {
    const double ysq = 1.0 / (y * y);
    double xnum = P[5] * ysq, xden = ysq;
    for (int i = 0; i < 4; ++i) {
      xnum = (xnum + P[i]) * ysq;
      xden = (xden + Q[i]) * ysq;
    }
    result = ysq * (xnum + P[4]) / (xden + Q[4]);
    result = (kInvSqrtPi - result) / y;
  }
  // split exp(-y^2) to keep the argument exactly representable
  const double ytrunc = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ytrunc) * (y + ytrunc);
  return std::exp(-ytrunc * ytrunc) * std::exp(-del) * result;
}

}  // namespace

double erf_approx(double x) {
  const double y = std::fabs(x);
  if (y <= kThresh) {
    const double ysq = y * y;
    double xnum = A[4] * ysq, xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + A[i]) * ysq;
      xden = (xden + B[i]) * ysq;
    }
    return x * (xnum + A[3]) / (xden + B[3]);
  }
  const double e = 1.0 - erfc_tail(y);
  return x < 0.0 ? -e : e;
}

double erfc_approx(double x) {
  const double y = std::fabs(x);
  if (y <= kThresh) return 1.0 - erf_approx(x);
  const double tail = erfc_tail(y);
  return x < 0.0 ? 2.0 - tail : tail;
}

double normal_cdf(double x) {
  if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
  return 0.5 * erfc_approx(-x * 0.70710678118654752440);
}

double normal_pdf(double x) {
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

}  // namespace svcalc
