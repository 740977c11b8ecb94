#pragma once

#include <concepts>
#include <cstdint>
#include <random>

#include "chshsim/chsh.hpp"

namespace chshsim {

inline constexpr std::uint64_t kDefaultSeed = 20080627;

/*
 * Deterministic substream of fair +-1 draws.
 *
 * Stream (seed, index) is an mt19937_64 seeded through std::seed_seq with the
 * 32-bit words {seed_lo, seed_hi, index_lo, index_hi}. Each 64-bit output
 * supplies 64 draws, least significant bit first; a set bit is +1.
 */
class SignStream {
 public:
  SignStream(std::uint64_t seed, std::uint64_t stream_index);

  int next() {
    if (remaining_ == 0) {
      bits_ = engine_();
      remaining_ = 64;
    }
    const int sign = (bits_ & 1U) != 0 ? +1 : -1;
    bits_ >>= 1;
    --remaining_;
    return sign;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t bits_ = 0;
  int remaining_ = 0;
};

/// Seeds an mt19937_64 for substream (seed, stream_index).
std::mt19937_64 make_substream(std::uint64_t seed, std::uint64_t stream_index);

template <class S>
concept SignSource = requires(S& source) {
  { source.next() } -> std::convertible_to<int>;
};

/// One simulated experiment: n_k fair rounds per channel, channels drawn in order 1..4.
template <SignSource Source>
RoundTally simulate_experiment(const ExperimentConfig& config, Source& stream) {
  RoundTally result;
  for (std::size_t k = 0; k < 4; ++k) {
    auto& channel = result.channels[k];
    channel.n = config[k];
    for (std::uint32_t r = 0; r < config[k]; ++r) channel.m += stream.next();
  }
  return result;
}

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for hits out of trials (trials > 0).
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = kZ95);

struct McEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t seed = 0;
  Threshold threshold = Threshold::strict;
  ExperimentConfig config;

  /// sqrt(p(1-p)/trials) evaluated at p.
  static double standard_error(double p, std::uint64_t trials);
};

struct McOptions {
  unsigned workers = 1;
  /// Trials per substream. Batch b always uses stream (seed, b), so the
  /// result depends on this value but not on the worker count.
  std::uint64_t batch_size = 1U << 16;
};

/// Throws InvalidConfiguration for trials == 0 or batch_size == 0.
McEstimate estimate_violation_probability(const ExperimentConfig& config,
                                          std::uint64_t trials, std::uint64_t seed,
                                          Threshold threshold,
                                          const McOptions& options = {});

}  // namespace chshsim
