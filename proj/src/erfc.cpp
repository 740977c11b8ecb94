#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chshsim/walk.hpp"

namespace chshsim {

namespace {

constexpr double kSeriesCutoff = 1.0;
constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// erf by its Maclaurin series; below the cutoff erfc >= 0.157 so 1 - erf
// loses at most one digit.
double erf_series(double x) {
  const double x2 = x * x;
  double power = x;
  double sum = x;
  for (int n = 1; n < 100; ++n) {
    power *= -x2 / n;
    const double term = power / (2 * n + 1);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 * kInvSqrtPi * sum;
}

// exp(-x^2) with the rounding error of x*x folded back in.
double exp_neg_square(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(-hi) * (1.0 - lo);
}

// Laplace continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated forward with the modified Lentz method; x >= kSeriesCutoff.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return exp_neg_square(x) * kInvSqrtPi / f;
}

double erfc_nonnegative(double x) {
  if (x < kSeriesCutoff) return 1.0 - erf_series(x);
  // exp(-x^2) underflows to zero beyond ~27.3
  if (x > 27.5) return 0.0;
  return erfc_continued_fraction(x);
}

}  // namespace

double erfc(double x) {
  if (!std::isfinite(x)) throw std::domain_error("erfc: argument must be finite");
  if (x < 0.0) return 2.0 - erfc_nonnegative(-x);
  return erfc_nonnegative(x);
}

}  // namespace chshsim
