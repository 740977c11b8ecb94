#include "chshsim/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "chshsim/chsh.hpp"
#include "chshsim/errors.hpp"
#include "chshsim/montecarlo.hpp"
#include "chshsim/report.hpp"
#include "chshsim/sweep.hpp"

namespace chshsim::cli {

namespace {

struct CommonOptions {
  std::string format = "csv";
  bool strict = false;
  bool nonstrict = false;

  OutputFormat output_format() const {
    return format == "json" ? OutputFormat::json : OutputFormat::csv;
  }
  Threshold threshold() const { return nonstrict ? Threshold::non_strict : Threshold::strict; }
};

void add_format_option(CLI::App& command, CommonOptions& options) {
  command.add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_threshold_flags(CLI::App& command, CommonOptions& options) {
  auto* strict = command.add_flag("--strict", options.strict, "Count |C| > 2 (default)");
  auto* nonstrict = command.add_flag("--nonstrict", options.nonstrict, "Count |C| >= 2");
  strict->excludes(nonstrict);
}

CLI::Option* add_rounds(CLI::App& command, std::vector<std::int64_t>& rounds) {
  return command.add_option("rounds", rounds, "Round counts n1 n2 n3 n4 for channels (1,1) (1,2) (2,1) (2,2)")
      ->expected(4)
      ->required();
}

ExperimentConfig make_config(const std::vector<std::int64_t>& rounds) {
  std::array<std::uint32_t, 4> n{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (rounds[k] < 1 || rounds[k] > std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidConfiguration("round counts must be positive integers (got " +
                                 std::to_string(rounds[k]) + ")");
    }
    n[k] = static_cast<std::uint32_t>(rounds[k]);
  }
  return ExperimentConfig(n);
}

Record config_fields(std::string_view method, std::string_view threshold,
                     const ExperimentConfig& config) {
  Record record{{"method", std::string(method)},
                {"threshold", std::string(threshold)},
                {"N", config.total()}};
  for (std::size_t k = 0; k < 4; ++k) {
    record.emplace_back("n" + std::to_string(k + 1), std::uint64_t{config[k]});
  }
  return record;
}

std::string exact_display(const Dyadic& value) {
  return value.to_fraction_string() + " (" + format_real(value.to_double()) + ")";
}

// ---------------------------------------------------------------------------

int cmd_toy(bool json, std::ostream& out) {
  const auto records = maximal_violation_records();
  const auto correlation = chsh_correlation(tally(records));
  const auto p = exact_violation_probability(ExperimentConfig({1, 1, 1, 1}), Threshold::strict);
  const std::string fraction = p.exact().to_fraction_string();
  const std::string decimal = format_real(p.to_double());

  if (json) {
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      doc["rows"].push_back({{"time_index", r.time_index}, {"a", r.a}, {"b", r.b}, {"c", r.c},
                             {"i", r.i}, {"j", r.j}, {"contribution", r.contribution()}});
    }
    doc["C"] = correlation.str();
    doc["violation"] = is_violation(correlation, Threshold::strict);
    doc["configurations"] = 16;
    doc["violating_configurations"] = 2;
    doc["p_fraction"] = fraction;
    doc["p"] = p.to_double();
    out << doc.dump(2) << '\n';
    return kExitSuccess;
  }

  out << "Four rounds, one per polarizer pair (i,j); c = a*b.\n\n";
  out << " No.   a   b   c   i   j   contribution\n";
  for (const auto& r : records) {
    out << std::setw(4) << r.time_index << std::showpos << std::setw(4) << r.a << std::setw(4)
        << r.b << std::setw(4) << r.c << std::noshowpos << std::setw(4) << r.i << std::setw(4)
        << r.j << std::showpos << std::setw(15) << r.contribution() << std::noshowpos << '\n';
  }
  out << "\ntotal CHSH correlation: C = " << correlation.str() << " (classical bound 2, quantum bound 2*sqrt(2))\n";
  out << "Any of the 2^4 = 16 sign patterns of c is equally likely; two of them (C = 4 and C = -4)\n"
         "exceed the classical bound.\n";
  out << "p = " << fraction << " = " << decimal << '\n';
  return kExitSuccess;
}

int cmd_exact(const ExperimentConfig& config, const CommonOptions& options, std::uint64_t budget,
              unsigned workers, std::ostream& out, std::ostream& err) {
  for (auto n : config.rounds()) {
    if (n > kDefaultStepLimit) {
      err << "error: n = " << n << " exceeds the exact step limit " << kDefaultStepLimit
          << "; use 'approx' instead\n";
      return kExitLimit;
    }
  }
  ExactOptions exact_options;
  exact_options.budget = budget;
  exact_options.workers = workers;
  const auto p = exact_violation_probability(config, options.threshold(), exact_options);
  auto record = config_fields(to_string(Method::exact), to_string(p.threshold), config);
  record.emplace_back("value", exact_display(p.exact()));
  record.emplace_back("fraction", p.exact().to_fraction_string());
  record.emplace_back("decimal", p.to_double());
  write_records(out, {record}, options.output_format());
  return kExitSuccess;
}

int cmd_approx(const ExperimentConfig& config, const CommonOptions& options, std::ostream& out) {
  const auto p = analytic_violation_probability(config);
  auto record = config_fields(to_string(Method::analytic), to_string(p.threshold), config);
  record.emplace_back("distance", hyperplane_distance(chsh_halfspace(config.real_rounds())));
  record.emplace_back("value", p.to_double());
  write_records(out, {record}, options.output_format());
  return kExitSuccess;
}

int cmd_mc(const ExperimentConfig& config, const CommonOptions& options, std::uint64_t trials,
           std::uint64_t seed, unsigned workers, std::ostream& out, std::ostream& err) {
  const double analytic = analytic_violation_probability(config).to_double();
  if (analytic * static_cast<double>(trials) < 10.0) {
    err << "warning: analytic p = " << format_real(analytic) << " gives fewer than 10 expected hits in "
        << trials << " trials; the estimate will be mostly noise\n";
  }
  const auto mc = estimate_violation_probability(config, trials, seed, options.threshold(),
                                                 McOptions{.workers = workers});
  auto record = config_fields(to_string(Method::monte_carlo), to_string(mc.threshold), config);
  record.emplace_back("trials", mc.trials);
  record.emplace_back("hits", mc.hits);
  record.emplace_back("estimate", mc.estimate);
  record.emplace_back("ci_low", mc.ci_low);
  record.emplace_back("ci_high", mc.ci_high);
  record.emplace_back("seed", mc.seed);
  write_records(out, {record}, options.output_format());
  return kExitSuccess;
}

Field optional_real(const std::optional<double>& v) {
  return v ? Field(*v) : Field(std::monostate{});
}

Field optional_fraction(const std::optional<Dyadic>& v) {
  return v ? Field(v->to_fraction_string()) : Field(std::monostate{});
}

Field optional_decimal(const std::optional<Dyadic>& v) {
  return v ? Field(v->to_double()) : Field(std::monostate{});
}

std::string analytic_position(const SweepRow& row) {
  if (!row.p_analytic || !row.p_exact_strict || !row.p_exact_nonstrict) return {};
  const double p = *row.p_analytic;
  if (p < row.p_exact_strict->to_double()) return "below";
  if (p > row.p_exact_nonstrict->to_double()) return "above";
  return "inside";
}

int cmd_sweep(const SweepRequest& request, OutputFormat format, std::ostream& out,
              std::ostream& err) {
  const auto rows = run_sweep(request);
  std::vector<Record> records;
  records.reserve(rows.size());
  for (const auto& row : rows) {
    Record record{{"variant", std::string(to_string(row.variant))},
                  {"kind", std::string(to_string(row.kind))},
                  {"N", row.total}};
    for (std::size_t k = 0; k < 4; ++k) {
      record.emplace_back("n" + std::to_string(k + 1), row.kind == SweepRowKind::error
                                                           ? Field(std::monostate{})
                                                           : Field(row.rounds[k]));
    }
    record.emplace_back("p_analytic", optional_real(row.p_analytic));
    record.emplace_back("p_exact_strict", optional_decimal(row.p_exact_strict));
    record.emplace_back("p_exact_nonstrict", optional_decimal(row.p_exact_nonstrict));
    record.emplace_back("p_exact_strict_fraction", optional_fraction(row.p_exact_strict));
    record.emplace_back("p_exact_nonstrict_fraction", optional_fraction(row.p_exact_nonstrict));
    record.emplace_back("analytic_position", analytic_position(row));
    record.emplace_back("error", row.error);
    if (row.kind == SweepRowKind::error) err << "warning: " << row.error << '\n';
    records.push_back(std::move(record));
  }
  write_records(out, records, format);
  return kExitSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-round CHSH violation probabilities: exact, analytic, Monte Carlo"};
  app.name("chshsim");
  app.require_subcommand(1);

  CommonOptions common;
  std::vector<std::int64_t> rounds;
  std::uint64_t budget = ExactOptions{}.budget;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  bool toy_json = false;

  auto* toy = app.add_subcommand("toy", "Replay the four-round maximal-violation example");
  toy->add_flag("--json", toy_json, "Machine-readable output");

  auto* exact = app.add_subcommand("exact", "Exact violation probability by enumeration");
  add_rounds(*exact, rounds);
  add_threshold_flags(*exact, common);
  add_format_option(*exact, common);
  exact->add_option("--budget", budget, "Maximum number of displacement tuples prod(n_k + 1)")
      ->capture_default_str();
  exact->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* approx = app.add_subcommand("approx", "Analytic erfc approximation");
  add_rounds(*approx, rounds);
  add_format_option(*approx, common);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate with a 95% Wilson interval");
  add_rounds(*mc, rounds);
  add_threshold_flags(*mc, common);
  add_format_option(*mc, common);
  mc->add_option("--trials", trials, "Simulated experiments")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mc->add_option("--seed", seed, "Random seed")->capture_default_str();
  mc->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  SweepRequest request;
  std::vector<std::string> variant_names{"equal", "ratio10", "ratio100"};
  auto* sweep = app.add_subcommand("sweep", "Probability vs total rounds N for the three splits");
  sweep->add_option("--variant", variant_names, "Splits to emit: equal ratio10 ratio100")
      ->check(CLI::IsMember({"equal", "ratio10", "ratio100", "ratio-10", "ratio-100"}))
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--n-values", request.n_values, "Total round counts N (default: powers of two)")
      ->delimiter(',');
  sweep->add_flag("--intervals", request.include_exact_intervals,
                  "Add exact strict/non-strict intervals for equal splits N = 4,8,12,16,20");
  sweep->add_flag("--continuous", request.continuous,
                  "Allow real-valued n_i so every N is usable for every split");
  add_format_option(*sweep, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (toy->parsed()) return cmd_toy(toy_json, out);
    if (exact->parsed()) return cmd_exact(make_config(rounds), common, budget, workers, out, err);
    if (approx->parsed()) return cmd_approx(make_config(rounds), common, out);
    if (mc->parsed()) return cmd_mc(make_config(rounds), common, trials, seed, workers, out, err);
    if (sweep->parsed()) {
      request.variants.clear();
      for (const auto& name : variant_names) request.variants.push_back(*parse_split_variant(name));
      std::sort(request.variants.begin(), request.variants.end());
      request.variants.erase(std::unique(request.variants.begin(), request.variants.end()),
                             request.variants.end());
      std::sort(request.n_values.begin(), request.n_values.end());
      return cmd_sweep(request, common.output_format(), out, err);
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace chshsim::cli
