#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chshsim/chsh.hpp"

namespace chshsim {

/// How N rounds are divided among the four channels.
enum class SplitVariant {
  equal,     // n1 = n2 = n3 = n4
  ratio10,   // 10 n1 = n2 = n3 = n4
  ratio100,  // 100 n1 = n2 = n3 = n4
};

std::string_view to_string(SplitVariant variant);
std::optional<SplitVariant> parse_split_variant(std::string_view name);

/// N per unit of n1: 4, 31, 301.
std::uint64_t split_unit(SplitVariant variant);

/// Integer split of N; nullopt unless split_unit divides N.
std::optional<ExperimentConfig> integer_split(SplitVariant variant, std::uint64_t total);
/// Real split n1 = N / unit, others scaled by the variant ratio.
std::array<double, 4> continuous_split(SplitVariant variant, double total);

/// Powers of two 4..4096 for equal (and for any continuous sweep);
/// unit * 2^k up to 4096 for the ratio variants.
std::vector<std::uint64_t> default_n_values(SplitVariant variant, bool continuous);

inline constexpr std::array<std::uint64_t, 5> kIntervalTotals{4, 8, 12, 16, 20};

struct SweepRequest {
  std::vector<SplitVariant> variants{SplitVariant::equal};
  /// Empty selects default_n_values per variant.
  std::vector<std::uint64_t> n_values;
  bool include_exact_intervals = false;
  bool continuous = false;
};

enum class SweepRowKind { analytic, exact_interval, error };
std::string_view to_string(SweepRowKind kind);

struct SweepRow {
  SplitVariant variant = SplitVariant::equal;
  SweepRowKind kind = SweepRowKind::analytic;
  std::uint64_t total = 0;
  std::array<double, 4> rounds{};
  std::optional<double> p_analytic;
  std::optional<Dyadic> p_exact_strict;
  std::optional<Dyadic> p_exact_nonstrict;
  std::string error;
};

/*
 * Rows sorted by (variant, N, kind). Analytic rows for every requested N;
 * with include_exact_intervals, one exact-interval row per N in
 * kIntervalTotals for the equal split. A non-divisible N yields an error row
 * instead of aborting the sweep.
 */
std::vector<SweepRow> run_sweep(const SweepRequest& request);

}  // namespace chshsim
