#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "chshsim/dyadic.hpp"

namespace chshsim {

inline constexpr std::uint32_t kDefaultStepLimit = 4096;

/*
 * Exact endpoint distribution of an n-step fair +-1 walk.
 *
 * Only parity-consistent displacements m = 2k - n (k = 0..n) are stored; the
 * mass at m is binomial(n, k) / 2^n. Displacements of the wrong parity or
 * outside [-n, n] have mass zero and are not represented.
 */
class WalkPmf {
 public:
  std::uint32_t steps() const { return steps_; }

  /// Number of +1 steps -> displacement.
  std::int64_t displacement(std::size_t k) const {
    return 2 * static_cast<std::int64_t>(k) - steps_;
  }

  /// binomial(n, k), indexed by the number of +1 steps.
  std::span<const BigInt> counts() const { return counts_; }

  /// Exact mass at displacement m (zero off the parity lattice).
  Dyadic mass(std::int64_t m) const;

 private:
  friend WalkPmf walk_pmf(std::uint32_t, std::uint32_t);
  std::uint32_t steps_ = 0;
  std::vector<BigInt> counts_;
};

/// Throws InvalidConfiguration for n == 0 or n > limit.
WalkPmf walk_pmf(std::uint32_t n, std::uint32_t limit = kDefaultStepLimit);

/// Stirling-limit density of the walk endpoint: exp(-x^2 / 2n) / sqrt(2 pi n).
double gaussian_density(std::uint32_t n, double x);

/// Complementary error function, (2/sqrt(pi)) * integral_x^inf exp(-t^2) dt.
/// Throws std::domain_error for NaN or infinite input.
double erfc(double x);

/// Hyperplane sum_i coefficients[i] * z_i = +-offset in the isotropic frame.
struct HalfSpaceSpec {
  std::array<double, 4> coefficients{};
  double offset = 2.0;
};

/// Coefficients sqrt(2 / n_k) and offset 2 for the CHSH layer |C| = 2.
/// Round counts may be real-valued (continuous splits).
HalfSpaceSpec chsh_halfspace(const std::array<double, 4>& rounds);

/// Distance |offset| / ||coefficients|| of the hyperplane from the origin.
/// Throws InvalidConfiguration unless every coefficient is finite and > 0.
double hyperplane_distance(const HalfSpaceSpec& spec);

}  // namespace chshsim
