#include "chshsim/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chshsim/errors.hpp"

namespace chshsim {

WalkPmf walk_pmf(std::uint32_t n, std::uint32_t limit) {
  if (n == 0) throw InvalidConfiguration("walk_pmf: step count must be at least 1");
  if (n > limit) {
    throw InvalidConfiguration("walk_pmf: step count " + std::to_string(n) +
                               " exceeds limit " + std::to_string(limit));
  }
  WalkPmf pmf;
  pmf.steps_ = n;
  pmf.counts_.reserve(n + 1);
  // Pascal row via binomial(n, k+1) = binomial(n, k) * (n-k) / (k+1).
  BigInt c = 1;
  for (std::uint32_t k = 0; k <= n; ++k) {
    pmf.counts_.push_back(c);
    c = c * (n - k) / (k + 1);
  }
  return pmf;
}

Dyadic WalkPmf::mass(std::int64_t m) const {
  const std::int64_t shifted = m + steps_;
  if (shifted < 0 || shifted > 2 * static_cast<std::int64_t>(steps_) || shifted % 2 != 0) {
    return Dyadic();
  }
  return Dyadic(counts_[static_cast<std::size_t>(shifted / 2)], steps_);
}

double gaussian_density(std::uint32_t n, double x) {
  if (n == 0) throw InvalidConfiguration("gaussian_density: n must be at least 1");
  const double variance = static_cast<double>(n);
  return std::exp(-x * x / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

HalfSpaceSpec chsh_halfspace(const std::array<double, 4>& rounds) {
  HalfSpaceSpec spec;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!(rounds[k] > 0.0) || !std::isfinite(rounds[k])) {
      throw InvalidConfiguration("chsh_halfspace: round counts must be finite and positive");
    }
    spec.coefficients[k] = std::sqrt(2.0 / rounds[k]);
  }
  spec.offset = 2.0;
  return spec;
}

double hyperplane_distance(const HalfSpaceSpec& spec) {
  auto sorted = spec.coefficients;
  for (double a : sorted) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvalidConfiguration("hyperplane_distance: coefficients must be finite and positive");
    }
  }
  // Fixed summation order makes the result independent of coefficient order.
  std::sort(sorted.begin(), sorted.end());
  double norm2 = 0.0;
  for (double a : sorted) norm2 += a * a;
  if (!std::isfinite(spec.offset)) {
    throw InvalidConfiguration("hyperplane_distance: offset must be finite");
  }
  return std::abs(spec.offset) / std::sqrt(norm2);
}

}  // namespace chshsim
