#include <doctest.h>

#include <cmath>
#include <vector>

#include "chshsim/errors.hpp"
#include "chshsim/montecarlo.hpp"

using namespace chshsim;

namespace {

struct ScriptedStream {
  std::vector<int> values;
  std::size_t position = 0;
  int next() { return values.at(position++); }
};

struct ConstantStream {
  int value = +1;
  std::uint64_t draws = 0;
  int next() {
    ++draws;
    return value;
  }
};

}  // namespace

TEST_CASE("simulate_experiment replays a scripted stream") {
  ScriptedStream stream{{+1, -1, +1, +1}};
  const auto t = simulate_experiment(ExperimentConfig({1, 1, 1, 1}), stream);
  CHECK(t.channels[0] == ChannelCount{+1, 1});
  CHECK(t.channels[1] == ChannelCount{-1, 1});
  CHECK(t.channels[2] == ChannelCount{+1, 1});
  CHECK(t.channels[3] == ChannelCount{+1, 1});
  CHECK(chsh_correlation(t) == 4);
}

TEST_CASE("all-plus stream lands exactly on the boundary") {
  const ExperimentConfig config({3, 5, 2, 7});
  ConstantStream stream;
  const auto t = simulate_experiment(config, stream);
  CHECK(stream.draws == config.total());
  for (std::size_t k = 0; k < 4; ++k) CHECK(t.channels[k].m == config[k]);
  CHECK(chsh_correlation(t) == 2);
  CHECK_FALSE(is_violation(chsh_correlation(t), Threshold::strict));
  CHECK(is_violation(chsh_correlation(t), Threshold::non_strict));
}

TEST_CASE("simulated channel displacements follow the walk pmf") {
  const ExperimentConfig config({2, 2, 2, 2});
  SignStream stream(77, 0);
  constexpr int trials = 200'000;
  std::array<std::array<int, 3>, 4> counts{};
  for (int t = 0; t < trials; ++t) {
    const auto tally = simulate_experiment(config, stream);
    for (std::size_t k = 0; k < 4; ++k) counts[k][static_cast<std::size_t>(tally.channels[k].m + 2) / 2]++;
  }
  const std::array<double, 3> expected{0.25, 0.5, 0.25};
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double p = expected[j];
      const double observed = static_cast<double>(counts[k][j]) / trials;
      CHECK(std::abs(observed - p) <= 3.0 * std::sqrt(p * (1 - p) / trials));
    }
  }
}

TEST_CASE("fair-coin sanity over 10^6 draws") {
  SignStream stream(kDefaultSeed, 0);
  std::int64_t sum = 0;
  for (int i = 0; i < 1'000'000; ++i) sum += stream.next();
  CHECK(std::abs(static_cast<double>(sum) / 1e6) <= 4.0 / std::sqrt(1e6));
}

TEST_CASE("substreams are reproducible and distinct") {
  SignStream a(5, 0), b(5, 0), c(5, 1), d(6, 0);
  int same_ab = 0, same_ac = 0, same_ad = 0;
  for (int i = 0; i < 4096; ++i) {
    const int x = a.next();
    same_ab += x == b.next();
    same_ac += x == c.next();
    same_ad += x == d.next();
  }
  CHECK(same_ab == 4096);
  CHECK(same_ac < 2300);
  CHECK(same_ad < 2300);
}

TEST_CASE("wilson interval") {
  const auto zero = wilson_interval(0, 100);
  CHECK(zero.low == 0.0);
  CHECK(zero.high > 0.0);
  CHECK(zero.high < 0.05);
  const auto all = wilson_interval(100, 100);
  CHECK(all.high == 1.0);
  CHECK(all.low < 1.0);
  // statsmodels proportion_confint(50, 100, method="wilson")
  const auto half = wilson_interval(50, 100);
  CHECK(half.low == doctest::Approx(0.4038315303659956).epsilon(1e-12));
  CHECK(half.high == doctest::Approx(0.5961684696340044).epsilon(1e-12));
  CHECK_THROWS_AS(wilson_interval(0, 0), InvalidConfiguration);
}

TEST_CASE("single-trial estimate") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto e = estimate_violation_probability(ExperimentConfig({1, 1, 1, 1}), 1, seed,
                                                  Threshold::strict);
    CHECK(e.hits <= 1);
    CHECK((e.estimate == 0.0 || e.estimate == 1.0));
    CHECK(e.ci_low <= e.estimate);
    CHECK(e.estimate <= e.ci_high);
  }
  CHECK_THROWS_AS(estimate_violation_probability(ExperimentConfig({1, 1, 1, 1}), 0, 1,
                                                 Threshold::strict),
                  InvalidConfiguration);
}

TEST_CASE("estimate is reproducible and independent of worker count") {
  const ExperimentConfig config({3, 1, 2, 2});
  McOptions options{.workers = 1, .batch_size = 1000};
  const auto base = estimate_violation_probability(config, 20'000, 314, Threshold::non_strict, options);
  for (unsigned workers : {1U, 2U, 5U, 8U}) {
    options.workers = workers;
    const auto again = estimate_violation_probability(config, 20'000, 314, Threshold::non_strict, options);
    CHECK(again.hits == base.hits);
    CHECK(again.estimate == base.estimate);
    CHECK(again.ci_low == base.ci_low);
  }
  const auto other = estimate_violation_probability(config, 20'000, 315, Threshold::non_strict, options);
  CHECK(other.hits != base.hits);
}

TEST_CASE("strict hits never exceed non-strict hits on the same paths") {
  for (const auto& r : {std::array<std::uint32_t, 4>{1, 1, 1, 1}, {2, 2, 2, 2}, {3, 1, 4, 1}, {5, 5, 5, 5}}) {
    const ExperimentConfig config(r);
    const auto strict = estimate_violation_probability(config, 50'000, 9, Threshold::strict);
    const auto loose = estimate_violation_probability(config, 50'000, 9, Threshold::non_strict);
    CHECK(strict.hits <= loose.hits);
  }
}

TEST_CASE("estimates agree with exact probabilities for N <= 16") {
  for (const auto& r : {std::array<std::uint32_t, 4>{1, 1, 1, 1}, {2, 2, 2, 2}, {1, 3, 2, 4}, {4, 4, 4, 4}}) {
    const ExperimentConfig config(r);
    for (auto th : {Threshold::strict, Threshold::non_strict}) {
      const double exact = exact_violation_probability(config, th).to_double();
      const auto mc = estimate_violation_probability(config, 1'000'000, 2024, th, {.workers = 2});
      CHECK(std::abs(mc.estimate - exact) <= 4.0 * McEstimate::standard_error(exact, mc.trials));
      CHECK(mc.ci_low <= mc.estimate);
      CHECK(mc.estimate <= mc.ci_high);
    }
  }
}
