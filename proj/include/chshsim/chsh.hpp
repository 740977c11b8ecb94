#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "chshsim/dyadic.hpp"
#include "chshsim/walk.hpp"

namespace chshsim {

using Rational = boost::multiprecision::cpp_rational;
__extension__ typedef __int128 WideInt;

enum class Threshold { strict, non_strict };
enum class Method { exact, analytic, monte_carlo };

std::string_view to_string(Threshold threshold);
std::string_view to_string(Method method);

/*
 * Round counts for the four polarizer channels, in correlation-term order:
 * (i,j) = (1,1), (1,2), (2,1), (2,2). The (1,2) channel carries the minus
 * sign of C.
 */
class ExperimentConfig {
 public:
  /// Throws InvalidConfiguration if any count is zero.
  explicit ExperimentConfig(std::array<std::uint32_t, 4> rounds);

  const std::array<std::uint32_t, 4>& rounds() const { return rounds_; }
  std::uint32_t operator[](std::size_t channel) const { return rounds_[channel]; }
  std::uint64_t total() const;
  std::array<double, 4> real_rounds() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

 private:
  std::array<std::uint32_t, 4> rounds_;
};

/// Sign of channel k's term in C: +, -, +, +.
inline constexpr std::array<int, 4> kChannelSign{+1, -1, +1, +1};

/// Channel index 0..3 for polarizer indices i, j in {1, 2}.
constexpr std::size_t channel_index(int i, int j) {
  return static_cast<std::size_t>(2 * (i - 1) + (j - 1));
}

/// One measurement row: outcomes a, b, their product c, and polarizer indices.
struct MeasurementRecord {
  std::uint64_t time_index = 0;
  int a = +1;
  int b = +1;
  int c = +1;
  int i = 1;
  int j = 1;

  /// Throws CorruptRecord if c != a*b or any field is out of range.
  void validate() const;
  /// This row's contribution to C: c, negated in the (1,2) channel.
  int contribution() const { return kChannelSign[channel_index(i, j)] * c; }
};

struct ChannelCount {
  std::int64_t m = 0;   // sum of c over the channel's rounds
  std::uint64_t n = 0;  // rounds in the channel
  friend bool operator==(const ChannelCount&, const ChannelCount&) = default;
};

struct RoundTally {
  std::array<ChannelCount, 4> channels{};
  friend bool operator==(const RoundTally&, const RoundTally&) = default;
};

/// The four rows of the maximal-violation example: C = 4.
std::span<const MeasurementRecord> maximal_violation_records();

RoundTally tally(std::span<const MeasurementRecord> records);

/// C = m1/n1 - m2/n2 + m3/n3 + m4/n4, exactly. Throws EmptyChannel if any n is 0.
Rational chsh_correlation(const RoundTally& tally);

/// strict: |C| > 2, non-strict: |C| >= 2.
bool is_violation(const Rational& correlation, Threshold threshold);

/*
 * Integer form of the violation predicate for a fixed config.
 *
 * With L = lcm(n_k), L*C = sum_k sign_k * (L / n_k) * m_k, so |C| > 2 becomes
 * |L*C| > 2L with no rounding anywhere. Used by the enumeration and the
 * Monte Carlo hot loop.
 */
class ViolationTest {
 public:
  explicit ViolationTest(const ExperimentConfig& config);

  WideInt scaled_correlation(const std::array<std::int64_t, 4>& m) const;
  bool violates(const std::array<std::int64_t, 4>& m, Threshold threshold) const;
  bool violates(const RoundTally& tally, Threshold threshold) const;

  /// Signed per-channel weights sign_k * L / n_k.
  const std::array<WideInt, 4>& weights() const { return weights_; }
  /// 2L.
  WideInt bound() const { return bound_; }

 private:
  std::array<WideInt, 4> weights_{};
  WideInt bound_ = 0;
};

struct ViolationProbability {
  std::variant<Dyadic, double> value;
  Method method = Method::exact;
  Threshold threshold = Threshold::strict;
  ExperimentConfig config;

  double to_double() const;
  /// Exact value; only valid when method == exact.
  const Dyadic& exact() const { return std::get<Dyadic>(value); }
};

struct ExactOptions {
  /// Cap on prod_k (n_k + 1), the number of displacement 4-tuples.
  std::uint64_t budget = 100'000'000;
  std::uint32_t step_limit = kDefaultStepLimit;
  /// Threads splitting the outermost displacement; result is identical for any count.
  unsigned workers = 1;
};

/// Number of displacement 4-tuples, prod_k (n_k + 1), saturating.
std::uint64_t enumeration_size(const ExperimentConfig& config);

/*
 * Exact probability of a violation, as a dyadic rational over 2^N.
 *
 * Sums prod_k P_{n_k}(m_k) over every displacement 4-tuple whose C crosses
 * the threshold. The innermost channel is resolved by a prefix-sum lookup of
 * its violating tails rather than a loop.
 *
 * Throws BudgetExceeded when enumeration_size() > options.budget and
 * InvalidConfiguration when some n_k exceeds options.step_limit.
 */
ViolationProbability exact_violation_probability(const ExperimentConfig& config,
                                                 Threshold threshold,
                                                 const ExactOptions& options = {});

/// erfc(sqrt(2 / sum 1/n_k)). Tagged strict; the boundary has no mass in the continuum.
ViolationProbability analytic_violation_probability(const ExperimentConfig& config);

/// Same formula for real-valued round counts (each > 0).
double analytic_violation_probability(const std::array<double, 4>& rounds);

/*
 * Monte Carlo integral of the isotropic 4D Gaussian (density e^{-z^2}/sqrt(pi)
 * per coordinate) outside the layer |sum_k sign_k sqrt(2/n_k) z_k| <= 2.
 * Independent check on the analytic formula. Requires samples >= 10^4.
 */
double gaussian_halfspace_oracle(const ExperimentConfig& config, std::uint64_t samples,
                                 std::uint64_t seed);

}  // namespace chshsim
