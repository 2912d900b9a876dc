#pragma once

#include <CLI11.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "shadowlab/cli/commands.hpp"

namespace shadowlab::cli {

inline constexpr char kHelpFooter[] = R"(Verdict CSV columns, in order:
  system_id,property,eps,delta,verdict,witness_or_cex,states_explored,runtime_ms
  (plus "certificate" with --verify-certificates; factor-check appends
  <property>:forward and <property>:converse per governed property).
Lines starting with '#' carry the tool version, seed, config echo and verdicts.
All rational flags accept "p/q" or integers.

Exit codes:
  0  analysis complete (whatever the verdicts)
  2  input error: malformed JSON, bad flags, bad parameters
  3  budget or size cap exceeded
  4  certificate failure or table cell violation
  5  input violates the metric or factor-map axioms)";

/// Parses argv and runs the command. Output goes to `out`, diagnostics to `err`.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::map<std::string, std::string> rationals;
  std::size_t horizon = 0;

  CLI::App app{"Exact shadowing-property deciders for finite and piecewise-linear dynamical systems", "shadowlab"};
  app.footer(kHelpFooter);
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto rational_flag = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option("--" + name, rationals[name], help);
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "write the report to this file");
    sub->add_option("--seed", cfg.seed, "seed for random systems (echoed in every report)");
    sub->add_flag("--verify-certificates", cfg.verify_certificates, "re-validate every verdict by direct simulation");
    sub->add_flag("!--no-timing", cfg.timing, "write '-' for runtime_ms so reports are byte-reproducible");
    sub->add_option("--state-budget", cfg.state_budget, "subset-automaton state budget");
    sub->add_option("--enumeration-cap", cfg.enumeration_cap, "largest system for visited-set enumeration");
  };
  auto thresholds = [&](CLI::App* sub) {
    rational_flag(sub, "eps", "shadowing radius");
    rational_flag(sub, "delta", "pseudo-orbit tightness; omit both to sweep the threshold grid");
  };

  auto* validate = app.add_subcommand("validate", "check system files against the metric axioms");
  validate->add_option("systems", cfg.inputs, "system JSON files")->required();
  common(validate);

  auto* decide_cmd = app.add_subcommand("decide", "decide a property at fixed thresholds");
  decide_cmd->add_option("property", cfg.target, "property name")->required();
  decide_cmd->add_option("systems", cfg.inputs, "system JSON files")->required();
  thresholds(decide_cmd);
  decide_cmd->add_option("--horizon", horizon, "lasso length bound for strong-orbital");
  common(decide_cmd);

  auto* property_cmd = app.add_subcommand("property", "scan the threshold grid: does every eps have a delta");
  property_cmd->add_option("name", cfg.target, "property name")->required();
  property_cmd->add_option("systems", cfg.inputs, "system JSON files")->required();
  common(property_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "bounded brute-force check");
  oracle_cmd->add_option("property", cfg.target, "property name")->required();
  oracle_cmd->add_option("systems", cfg.inputs, "system JSON files")->required();
  oracle_cmd->add_option("--horizon", horizon, "walk length bound")->required();
  thresholds(oracle_cmd);
  common(oracle_cmd);

  auto* induce = app.add_subcommand("induce", "emit an induced system as system JSON");
  induce->add_option("kind", cfg.target, "hyperspace | symmetric | product | tower")->required();
  induce->add_option("systems", cfg.inputs, "base system(s); product takes several")->required();
  induce->add_option("--n", cfg.order, "symmetric product order");
  induce->add_option("--levels", cfg.levels, "tower depth");
  induce->add_option("--hyperspace-cap", cfg.hyperspace_cap, "largest base for the hyperspace");
  induce->add_option("--point-cap", cfg.point_cap, "largest induced system");
  common(induce);

  auto* factor = app.add_subcommand("factor-check", "decide a lifting property of a factor map");
  factor->add_option("variant", cfg.target, "alp | ealp | oalp | soalp | w1alp | alap | alaep | oalap")->required();
  factor->add_option("factor_map", cfg.inputs, "factor-map JSON file")->required();
  rational_flag(factor, "closeness", "closeness of lifted points");
  rational_flag(factor, "up", "domain tightness");
  rational_flag(factor, "down", "codomain tightness");
  factor->add_option("--horizon", horizon, "lasso length bound for soalp");
  common(factor);

  auto* experiment = app.add_subcommand("experiment", "run a piecewise-linear or rotation counterexample");
  experiment->add_option("example", cfg.target, "example id")->required();
  thresholds(experiment);
  experiment->add_option("--horizon", horizon, "last step generated");
  rational_flag(experiment, "resolution", "candidate grid resolution for rotation searches");
  experiment->add_option("--n", cfg.order, "symmetric product order / number of factors");
  experiment->add_option("--warmup", cfg.warmup, "first window start for eventual runs");
  experiment->add_option("--window", cfg.window, "window length for eventual runs (0 disables)");
  experiment->add_option("--windows", cfg.windows, "number of windows");
  experiment->add_option("--pattern-budget", cfg.pattern_budget, "symmetric-run pattern budget per step");
  experiment->add_option("--emit-plot-data", cfg.plot_data, "write step-vs-defect CSV here");
  common(experiment);

  auto* table = app.add_subcommand("table", "check the preservation table on systems");
  table->add_option("systems", cfg.inputs, "system JSON files");
  table->add_option("--random", cfg.random_systems, "add this many random systems");
  table->add_option("--max-points", cfg.random_max_points, "largest random system");
  table->add_option("--hyperspace-cap", cfg.hyperspace_cap, "largest base for the hyperspace");
  table->add_option("--point-cap", cfg.point_cap, "largest induced system");
  common(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    auto* sub = app.get_subcommands().front();
    if (auto* opt = sub->get_option_no_throw("--horizon"); opt && opt->count()) cfg.horizon = horizon;
    auto take = [&](const std::string& name, std::optional<Rational>& slot) {
      auto it = rationals.find(name);
      if (it != rationals.end() && !it->second.empty()) slot = parse_rational(it->second);
    };
    take("eps", cfg.eps);
    take("delta", cfg.delta);
    take("closeness", cfg.closeness);
    take("up", cfg.up);
    take("down", cfg.down);
    take("resolution", cfg.resolution);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return run_reporting(cfg, out, err);
}

}  // namespace shadowlab::cli
