#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "storagegame/analysis.hpp"
#include "storagegame/equilibrium.hpp"
#include "storagegame/scenario_file.hpp"
#include "storagegame/utility.hpp"

namespace storagegame::cli {

namespace {

struct Options {
  std::string scenario_path;
  std::optional<double> alpha;
  std::string theory = "both";
  bool csv = false;
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;
  std::string out_path;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kParseFailure;
    case ErrorKind::Validation: return kValidationFailure;
    case ErrorKind::Existence: return kExistenceFailure;
    case ErrorKind::Numeric: return kNumericFailure;
    case ErrorKind::Io: return kIoFailure;
  }
  return kNumericFailure;
}

Scenario load(const Options& options) {
  Scenario scenario = options.scenario_path.empty() ? reference_scenario()
                                                    : load_scenario(options.scenario_path);
  if (!options.alpha) return scenario;
  auto grid = scenario.grid();
  grid.prelec_alpha = *options.alpha;
  return validate_scenario(scenario.customers(), std::move(grid));
}

std::vector<Theory> theories(const std::string& flag) {
  if (flag == "eut") return {Theory::EUT};
  if (flag == "pt") return {Theory::PT};
  return {Theory::EUT, Theory::PT};
}

int cmd_check(const Options& options, std::ostream& out) {
  const auto scenario = load(options);
  const auto report = check_existence(scenario);
  out << report.describe();
  out << (report.satisfied() ? "proper mixed equilibrium exists\n"
                             : "existence condition violated\n");
  return report.satisfied() ? kSuccess : kExistenceFailure;
}

int cmd_solve(const Options& options, std::ostream& out) {
  const auto scenario = load(options);
  std::vector<std::pair<EquilibriumResult, VerificationReport>> results;
  for (Theory theory : theories(options.theory)) {
    auto result = solve(theory, scenario);
    auto verification = verify_equilibrium(result, scenario, 101);
    results.emplace_back(std::move(result), std::move(verification));
  }

  if (options.csv) {
    out << "theory,p1,p2,residual1,residual2,revenue,load\n";
    for (const auto& [result, verification] : results)
      out << to_string(result.theory) << ',' << format_number(result.mixed[0]) << ','
          << format_number(result.mixed[1]) << ',' << format_number(result.indifference_residuals[0])
          << ',' << format_number(result.indifference_residuals[1]) << ','
          << format_number(revenue(result.mixed, scenario)) << ','
          << format_number(expected_load(result.mixed, scenario)) << '\n';
    return kSuccess;
  }

  for (const auto& [result, verification] : results) {
    out << to_string(result.theory) << " equilibrium";
    if (result.theory == Theory::PT) out << " (prelec alpha = " << format_number(scenario.grid().prelec_alpha) << ')';
    out << '\n';
    for (std::size_t k = 0; k < 2; ++k)
      out << "  customer " << k + 1 << ": charge probability " << format_number(result.mixed[k])
          << ", indifference residual " << format_number(result.indifference_residuals[k])
          << ", best deviation gain " << format_number(verification.max_gain[k]) << '\n';
    out << "  revenue       " << format_number(revenue(result.mixed, scenario)) << '\n';
    out << "  expected load " << format_number(expected_load(result.mixed, scenario)) << " kWh\n";
    out << "  verified      " << (verification.confirmed ? "yes" : "no") << '\n';
  }
  return kSuccess;
}

int cmd_sweep(const Options& options, std::ostream& out, std::ostream& err) {
  const auto scenario = load(options);
  SweepSpec spec;
  spec.parameter = parse_sweep_parameter(options.parameter);
  spec.start = options.start;
  spec.stop = options.stop;
  spec.steps = options.steps;
  spec.theories = theories(options.theory);
  const auto rows = sweep(spec, scenario);

  std::ostream* summary = &out;
  if (options.out_path.empty()) {
    emit_csv(rows, out);
    summary = &err;
  } else {
    emit_csv(rows, std::filesystem::path(options.out_path));
  }
  *summary << "feasible points: " << feasible_points(rows) << " of " << rows.size() << '\n';
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Charge/discharge equilibria for customer-owned storage games"};
  app.require_subcommand(1);
  Options options;

  const auto add_common = [&options](CLI::App* sub) {
    sub->add_option("scenario", options.scenario_path,
                    "Scenario TOML file (default: bundled reference scenario)")
        ->check(CLI::ExistingFile);
    sub->add_option("--alpha", options.alpha, "Override the Prelec weighting parameter")
        ->check(CLI::Range(0.0, 1.0));
  };
  const auto theory_set = CLI::IsMember({"eut", "pt", "both"});

  auto* check = app.add_subcommand("check", "Evaluate the existence bounds for both customers");
  add_common(check);

  auto* solve_cmd = app.add_subcommand("solve", "Solve the proper mixed equilibrium");
  add_common(solve_cmd);
  solve_cmd->add_option("--theory", options.theory, "eut, pt or both")->check(theory_set);
  solve_cmd->add_flag("--csv", options.csv, "Machine-readable output");

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter and write CSV");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--param", options.parameter, "sell_price (b), lmp_base_price (c) or beta")
      ->required();
  sweep_cmd->add_option("--start", options.start, "First swept value")->required();
  sweep_cmd->add_option("--stop", options.stop, "Last swept value")->required();
  sweep_cmd->add_option("--steps", options.steps, "Number of swept values (>= 2)")->required();
  sweep_cmd->add_option("--out", options.out_path, "CSV destination (default: stdout)");
  sweep_cmd->add_option("--theory", options.theory, "eut, pt or both")->check(theory_set);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*check) return cmd_check(options, out);
    if (*solve_cmd) return cmd_solve(options, out);
    return cmd_sweep(options, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
}

}  // namespace storagegame::cli
