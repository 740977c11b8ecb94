#include "chshsim/chsh.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "chshsim/errors.hpp"
#include "chshsim/montecarlo.hpp"

namespace chshsim {

std::string_view to_string(Threshold threshold) {
  return threshold == Threshold::strict ? "strict" : "non-strict";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::exact: return "exact";
    case Method::analytic: return "analytic";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

ExperimentConfig::ExperimentConfig(std::array<std::uint32_t, 4> rounds) : rounds_(rounds) {
  for (auto n : rounds_) {
    if (n == 0) throw InvalidConfiguration("every channel needs at least one round");
  }
}

std::uint64_t ExperimentConfig::total() const {
  std::uint64_t sum = 0;
  for (auto n : rounds_) sum += n;
  return sum;
}

std::array<double, 4> ExperimentConfig::real_rounds() const {
  return {double(rounds_[0]), double(rounds_[1]), double(rounds_[2]), double(rounds_[3])};
}

// ---------------------------------------------------------------------------
// Records and tallies

void MeasurementRecord::validate() const {
  const auto unit = [](int v) { return v == 1 || v == -1; };
  if (!unit(a) || !unit(b) || !unit(c)) throw CorruptRecord("outcomes must be +1 or -1");
  if (c != a * b) {
    throw CorruptRecord("record " + std::to_string(time_index) + ": c must equal a*b");
  }
  if ((i != 1 && i != 2) || (j != 1 && j != 2)) {
    throw CorruptRecord("record " + std::to_string(time_index) + ": polarizer index not in {1,2}");
  }
}

std::span<const MeasurementRecord> maximal_violation_records() {
  static constexpr std::array<MeasurementRecord, 4> rows{{
      {1, +1, +1, +1, 1, 1},
      {2, +1, -1, -1, 1, 2},
      {3, +1, +1, +1, 2, 1},
      {4, +1, +1, +1, 2, 2},
  }};
  return rows;
}

RoundTally tally(std::span<const MeasurementRecord> records) {
  RoundTally result;
  for (const auto& record : records) {
    record.validate();
    auto& channel = result.channels[channel_index(record.i, record.j)];
    channel.m += record.c;
    channel.n += 1;
  }
  return result;
}

Rational chsh_correlation(const RoundTally& tally) {
  Rational c = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& channel = tally.channels[k];
    if (channel.n == 0) {
      throw EmptyChannel("channel " + std::to_string(k + 1) + " has no rounds");
    }
    c += kChannelSign[k] * Rational(channel.m, static_cast<std::int64_t>(channel.n));
  }
  return c;
}

bool is_violation(const Rational& correlation, Threshold threshold) {
  const Rational magnitude = correlation < 0 ? Rational(-correlation) : correlation;
  return threshold == Threshold::strict ? magnitude > 2 : magnitude >= 2;
}

// ---------------------------------------------------------------------------
// Integer predicate

namespace {

__extension__ typedef unsigned __int128 UWide;

UWide gcd_wide(UWide a, UWide b) {
  while (b != 0) {
    const UWide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Keeps |L*C| <= 4L well inside a signed 128-bit range.
constexpr UWide kMaxLcm = UWide{1} << 100;

WideInt floor_div(WideInt a, WideInt b) {
  WideInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

WideInt ceil_div(WideInt a, WideInt b) { return -floor_div(-a, b); }

}  // namespace

ViolationTest::ViolationTest(const ExperimentConfig& config) {
  UWide lcm = 1;
  for (auto n : config.rounds()) {
    lcm = lcm / gcd_wide(lcm, n) * n;
    if (lcm > kMaxLcm) throw InvalidConfiguration("round counts too large for exact comparison");
  }
  const auto l = static_cast<WideInt>(lcm);
  for (std::size_t k = 0; k < 4; ++k) weights_[k] = kChannelSign[k] * (l / config[k]);
  bound_ = 2 * l;
}

WideInt ViolationTest::scaled_correlation(const std::array<std::int64_t, 4>& m) const {
  WideInt s = 0;
  for (std::size_t k = 0; k < 4; ++k) s += weights_[k] * m[k];
  return s;
}

bool ViolationTest::violates(const std::array<std::int64_t, 4>& m, Threshold threshold) const {
  WideInt s = scaled_correlation(m);
  if (s < 0) s = -s;
  return threshold == Threshold::strict ? s > bound_ : s >= bound_;
}

bool ViolationTest::violates(const RoundTally& tally, Threshold threshold) const {
  return violates(std::array<std::int64_t, 4>{tally.channels[0].m, tally.channels[1].m, tally.channels[2].m,
                   tally.channels[3].m},
                  threshold);
}

// ---------------------------------------------------------------------------
// Probabilities

double ViolationProbability::to_double() const {
  if (const auto* d = std::get_if<Dyadic>(&value)) return d->to_double();
  return std::get<double>(value);
}

std::uint64_t enumeration_size(const ExperimentConfig& config) {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t size = 1;
  for (auto n : config.rounds()) {
    const std::uint64_t factor = std::uint64_t{n} + 1;
    if (size > cap / factor) return cap;
    size *= factor;
  }
  return size;
}

namespace {

// Mass (as a count over 2^n4) of the channel-4 displacements that push C past
// the threshold, given the scaled contribution of channels 1-3.
class LastChannelTails {
 public:
  LastChannelTails(const WalkPmf& pmf, WideInt weight, WideInt bound, Threshold threshold)
      : steps_(pmf.steps()), weight_(weight), bound_(bound), threshold_(threshold) {
    const auto counts = pmf.counts();
    prefix_.resize(counts.size() + 1);
    for (std::size_t k = 0; k < counts.size(); ++k) prefix_[k + 1] = prefix_[k] + counts[k];
  }

  BigInt count(WideInt partial) const {
    const bool strict = threshold_ == Threshold::strict;
    const WideInt n = steps_;
    // Upper tail: partial + w*m > B (>= B), lowest violating displacement.
    const WideInt up_num = bound_ - partial;
    const WideInt m_low = strict ? floor_div(up_num, weight_) + 1 : ceil_div(up_num, weight_);
    // Lower tail: partial + w*m < -B (<= -B), highest violating displacement.
    const WideInt down_num = -bound_ - partial;
    const WideInt m_high = strict ? ceil_div(down_num, weight_) - 1 : floor_div(down_num, weight_);

    // m = 2k - n
    const WideInt k_low = std::max<WideInt>(0, std::min<WideInt>(n + 1, ceil_div(m_low + n, 2)));
    const WideInt k_high = std::max<WideInt>(-1, std::min<WideInt>(n, floor_div(m_high + n, 2)));

    const auto& total = prefix_.back();
    BigInt result = total - prefix_[static_cast<std::size_t>(k_low)];
    result += prefix_[static_cast<std::size_t>(k_high + 1)];
    return result;
  }

 private:
  std::uint32_t steps_;
  WideInt weight_;
  WideInt bound_;
  Threshold threshold_;
  std::vector<BigInt> prefix_;
};

}  // namespace

ViolationProbability exact_violation_probability(const ExperimentConfig& config,
                                                 Threshold threshold,
                                                 const ExactOptions& options) {
  const auto size = enumeration_size(config);
  if (size > options.budget) {
    throw BudgetExceeded("exact enumeration needs " + std::to_string(size) +
                         " displacement tuples, budget is " + std::to_string(options.budget) +
                         "; use the analytic approximation");
  }
  std::array<WalkPmf, 4> pmfs;
  for (std::size_t k = 0; k < 4; ++k) pmfs[k] = walk_pmf(config[k], options.step_limit);

  const ViolationTest test(config);
  const auto& w = test.weights();
  // The sign of w4 is +, as required by the tail lookup.
  const LastChannelTails tails(pmfs[3], w[3], test.bound(), threshold);

  const auto c1 = pmfs[0].counts();
  const auto c2 = pmfs[1].counts();
  const auto c3 = pmfs[2].counts();

  auto partial_sum = [&](std::size_t first, std::size_t stride) {
    BigInt acc = 0;
    for (std::size_t k1 = first; k1 < c1.size(); k1 += stride) {
      const WideInt s1 = w[0] * pmfs[0].displacement(k1);
      BigInt over_k2 = 0;
      for (std::size_t k2 = 0; k2 < c2.size(); ++k2) {
        const WideInt s2 = s1 + w[1] * pmfs[1].displacement(k2);
        BigInt over_k3 = 0;
        for (std::size_t k3 = 0; k3 < c3.size(); ++k3) {
          const BigInt hits = tails.count(s2 + w[2] * pmfs[2].displacement(k3));
          if (hits != 0) over_k3 += c3[k3] * hits;
        }
        if (over_k3 != 0) over_k2 += c2[k2] * over_k3;
      }
      if (over_k2 != 0) acc += c1[k1] * over_k2;
    }
    return acc;
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(options.workers, c1.size()));
  BigInt numerator = 0;
  if (workers == 1) {
    numerator = partial_sum(0, 1);
  } else {
    std::vector<BigInt> partials(workers);
    {
      std::vector<std::jthread> threads;
      for (unsigned t = 0; t < workers; ++t) {
        threads.emplace_back([&, t] { partials[t] = partial_sum(t, workers); });
      }
    }
    for (const auto& p : partials) numerator += p;
  }

  return ViolationProbability{Dyadic(std::move(numerator), static_cast<std::uint32_t>(config.total())),
                              Method::exact, threshold, config};
}

double analytic_violation_probability(const std::array<double, 4>& rounds) {
  return erfc(hyperplane_distance(chsh_halfspace(rounds)));
}

ViolationProbability analytic_violation_probability(const ExperimentConfig& config) {
  return ViolationProbability{analytic_violation_probability(config.real_rounds()),
                              Method::analytic, Threshold::strict, config};
}

double gaussian_halfspace_oracle(const ExperimentConfig& config, std::uint64_t samples,
                                 std::uint64_t seed) {
  if (samples < 10'000) throw InvalidConfiguration("gaussian_halfspace_oracle: need >= 10^4 samples");
  std::array<double, 4> coefficient{};
  for (std::size_t k = 0; k < 4; ++k) {
    coefficient[k] = kChannelSign[k] * std::sqrt(2.0 / config[k]);
  }
  auto engine = make_substream(seed, 0);
  // density exp(-z^2)/sqrt(pi): variance 1/2
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::uint64_t outside = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    double projection = 0.0;
    for (std::size_t k = 0; k < 4; ++k) projection += coefficient[k] * normal(engine);
    if (std::abs(projection) > 2.0) ++outside;
  }
  return static_cast<double>(outside) / static_cast<double>(samples);
}

}  // namespace chshsim
