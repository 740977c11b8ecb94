#include <doctest.h>

#include <cmath>

#include "chshsim/sweep.hpp"

using namespace chshsim;

TEST_CASE("split helpers") {
  CHECK(split_unit(SplitVariant::equal) == 4);
  CHECK(split_unit(SplitVariant::ratio10) == 31);
  CHECK(split_unit(SplitVariant::ratio100) == 301);
  CHECK(integer_split(SplitVariant::ratio10, 62)->rounds() == std::array<std::uint32_t, 4>{2, 20, 20, 20});
  CHECK_FALSE(integer_split(SplitVariant::ratio10, 64).has_value());
  CHECK_FALSE(integer_split(SplitVariant::equal, 0).has_value());
  const auto c = continuous_split(SplitVariant::ratio100, 602.0);
  CHECK(c[0] == 2.0);
  CHECK(c[3] == 200.0);
  CHECK(parse_split_variant("ratio-100") == SplitVariant::ratio100);
  CHECK_FALSE(parse_split_variant("ratio7").has_value());
  const auto grid = default_n_values(SplitVariant::equal, false);
  CHECK(grid.front() == 4);
  CHECK(grid.back() == 4096);
  CHECK(grid.size() == 11);
  CHECK(default_n_values(SplitVariant::ratio10, false).front() == 31);
}

TEST_CASE("equal sweep values and exact intervals") {
  SweepRequest request{.variants = {SplitVariant::equal}, .n_values = {4, 100},
                       .include_exact_intervals = true};
  const auto rows = run_sweep(request);
  // analytic 4, interval 4, interval 8, 12, 16, 20, analytic 100
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].kind == SweepRowKind::analytic);
  CHECK(rows[0].total == 4);
  CHECK(std::abs(*rows[0].p_analytic - 0.31731050786291406975) <= 1e-12);
  CHECK(rows[1].kind == SweepRowKind::exact_interval);
  CHECK(rows[1].p_exact_strict->to_fraction_string() == "1/8");
  CHECK(rows[1].p_exact_nonstrict->to_fraction_string() == "5/8");
  CHECK(rows.back().total == 100);
  CHECK(std::abs(*rows.back().p_analytic - 5.7330314375838727391e-07) <= 1e-12 * 5.7e-07);
}

TEST_CASE("indivisible N becomes an error row and the sweep continues") {
  const auto rows = run_sweep({.variants = {SplitVariant::ratio10}, .n_values = {31, 40, 62}});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].kind == SweepRowKind::analytic);
  CHECK(rows[1].kind == SweepRowKind::error);
  CHECK_FALSE(rows[1].error.empty());
  CHECK(rows[2].kind == SweepRowKind::analytic);
}

TEST_CASE("sweep ordering and variant ordering") {
  const auto rows = run_sweep({.variants = {SplitVariant::ratio100, SplitVariant::equal, SplitVariant::ratio10},
                               .continuous = true});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool ordered = rows[i - 1].variant < rows[i].variant ||
                         (rows[i - 1].variant == rows[i].variant && rows[i - 1].total < rows[i].total);
    CHECK(ordered);
  }
  const std::size_t per_variant = rows.size() / 3;
  for (std::size_t i = 0; i < per_variant; ++i) {
    const auto& equal = rows[i];
    const auto& r10 = rows[per_variant + i];
    const auto& r100 = rows[2 * per_variant + i];
    REQUIRE(equal.total == r10.total);
    REQUIRE(equal.total == r100.total);
    CHECK(*r100.p_analytic >= *r10.p_analytic);
    CHECK(*r10.p_analytic >= *equal.p_analytic);
  }
  CHECK(run_sweep({.variants = {SplitVariant::equal}, .continuous = true}).size() == per_variant);
}
