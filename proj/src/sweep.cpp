#include "chshsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace chshsim {

std::string_view to_string(SplitVariant variant) {
  switch (variant) {
    case SplitVariant::equal: return "equal";
    case SplitVariant::ratio10: return "ratio10";
    case SplitVariant::ratio100: return "ratio100";
  }
  return "unknown";
}

std::optional<SplitVariant> parse_split_variant(std::string_view name) {
  if (name == "equal") return SplitVariant::equal;
  if (name == "ratio10" || name == "ratio-10") return SplitVariant::ratio10;
  if (name == "ratio100" || name == "ratio-100") return SplitVariant::ratio100;
  return std::nullopt;
}

std::string_view to_string(SweepRowKind kind) {
  switch (kind) {
    case SweepRowKind::analytic: return "analytic";
    case SweepRowKind::exact_interval: return "exact-interval";
    case SweepRowKind::error: return "error";
  }
  return "unknown";
}

namespace {

std::uint64_t ratio(SplitVariant variant) {
  switch (variant) {
    case SplitVariant::equal: return 1;
    case SplitVariant::ratio10: return 10;
    case SplitVariant::ratio100: return 100;
  }
  return 1;
}

}  // namespace

std::uint64_t split_unit(SplitVariant variant) { return 1 + 3 * ratio(variant); }

std::optional<ExperimentConfig> integer_split(SplitVariant variant, std::uint64_t total) {
  const auto unit = split_unit(variant);
  if (total == 0 || total % unit != 0) return std::nullopt;
  const std::uint64_t n1 = total / unit;
  const std::uint64_t rest = n1 * ratio(variant);
  if (rest > std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  const auto a = static_cast<std::uint32_t>(n1);
  const auto b = static_cast<std::uint32_t>(rest);
  return ExperimentConfig({a, b, b, b});
}

std::array<double, 4> continuous_split(SplitVariant variant, double total) {
  const double n1 = total / static_cast<double>(split_unit(variant));
  const double rest = n1 * static_cast<double>(ratio(variant));
  return {n1, rest, rest, rest};
}

std::vector<std::uint64_t> default_n_values(SplitVariant variant, bool continuous) {
  const std::uint64_t unit = continuous ? 4 : split_unit(variant);
  std::vector<std::uint64_t> values;
  for (std::uint64_t n = unit; n <= 4096; n *= 2) values.push_back(n);
  return values;
}

std::vector<SweepRow> run_sweep(const SweepRequest& request) {
  std::vector<SweepRow> rows;
  for (const auto variant : request.variants) {
    auto totals = request.n_values.empty() ? default_n_values(variant, request.continuous)
                                           : request.n_values;
    for (const auto total : totals) {
      SweepRow row;
      row.variant = variant;
      row.total = total;
      if (request.continuous) {
        if (total == 0) {
          row.kind = SweepRowKind::error;
          row.error = "N must be positive";
        } else {
          row.rounds = continuous_split(variant, static_cast<double>(total));
          row.p_analytic = analytic_violation_probability(row.rounds);
        }
      } else if (const auto config = integer_split(variant, total)) {
        row.rounds = config->real_rounds();
        row.p_analytic = analytic_violation_probability(*config).to_double();
      } else {
        row.kind = SweepRowKind::error;
        row.error = "N=" + std::to_string(total) + " is not a positive multiple of " +
                    std::to_string(split_unit(variant)) + " for split " +
                    std::string(to_string(variant));
      }
      rows.push_back(std::move(row));
    }
    if (request.include_exact_intervals && variant == SplitVariant::equal) {
      for (const auto total : kIntervalTotals) {
        const auto config = *integer_split(SplitVariant::equal, total);
        SweepRow row;
        row.variant = variant;
        row.kind = SweepRowKind::exact_interval;
        row.total = total;
        row.rounds = config.real_rounds();
        row.p_analytic = analytic_violation_probability(config).to_double();
        row.p_exact_strict = exact_violation_probability(config, Threshold::strict).exact();
        row.p_exact_nonstrict = exact_violation_probability(config, Threshold::non_strict).exact();
        rows.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.variant != b.variant) return a.variant < b.variant;
    if (a.total != b.total) return a.total < b.total;
    return a.kind < b.kind;
  });
  return rows;
}

}  // namespace chshsim
