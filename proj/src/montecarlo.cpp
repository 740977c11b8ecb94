#include "chshsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "chshsim/errors.hpp"

namespace chshsim {

std::mt19937_64 make_substream(std::uint64_t seed, std::uint64_t stream_index) {
  std::seed_seq sequence{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
  return std::mt19937_64(sequence);
}

SignStream::SignStream(std::uint64_t seed, std::uint64_t stream_index)
    : engine_(make_substream(seed, stream_index)) {}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) throw InvalidConfiguration("wilson_interval: trials must be positive");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // Rounding can nudge an endpoint past p at hits == 0 or hits == trials.
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

double McEstimate::standard_error(double p, std::uint64_t trials) {
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

McEstimate estimate_violation_probability(const ExperimentConfig& config, std::uint64_t trials,
                                          std::uint64_t seed, Threshold threshold,
                                          const McOptions& options) {
  if (trials == 0) throw InvalidConfiguration("trials must be at least 1");
  if (options.batch_size == 0) throw InvalidConfiguration("batch size must be at least 1");

  const ViolationTest test(config);
  const std::uint64_t batches = (trials + options.batch_size - 1) / options.batch_size;

  auto run_batch = [&](std::uint64_t batch) {
    SignStream stream(seed, batch);
    const std::uint64_t begin = batch * options.batch_size;
    const std::uint64_t count = std::min(options.batch_size, trials - begin);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < count; ++t) {
      if (test.violates(simulate_experiment(config, stream), threshold)) ++hits;
    }
    return hits;
  };

  std::vector<std::uint64_t> batch_hits(batches, 0);
  const auto workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(options.workers, 1, batches));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < batches; ++b) batch_hits[b] = run_batch(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (auto b = next.fetch_add(1); b < batches; b = next.fetch_add(1)) {
          batch_hits[b] = run_batch(b);
        }
      });
    }
  }

  McEstimate result{.trials = trials, .seed = seed, .threshold = threshold, .config = config};
  for (auto h : batch_hits) result.hits += h;
  result.estimate = static_cast<double>(result.hits) / static_cast<double>(trials);
  const auto ci = wilson_interval(result.hits, trials);
  result.ci_low = ci.low;
  result.ci_high = ci.high;
  return result;
}

}  // namespace chshsim
