// Command-line front end: run scenarios, synthesize or validate gains,
// solve equilibria and compare strategies across scenario files.

#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nashseek/equilibrium.hpp"
#include "nashseek/errors.hpp"
#include "nashseek/scenario.hpp"

namespace {

// Documented exit codes.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNotConverged = 4;
constexpr int kExitStiffness = 5;
constexpr int kExitUncertified = 6;

using nashseek::ScenarioConfig;

ScenarioConfig load_config(const std::string& positional,
                           const std::string& flag) {
  if (positional.empty() && flag.empty())
    throw nashseek::ValidationError("no config file given");
  if (!positional.empty() && !flag.empty() && positional != flag)
    throw nashseek::ValidationError(
        "config given both as positional argument and --config");
  return nashseek::parse_config_file(positional.empty() ? flag : positional);
}

int classify(const std::exception& e) {
  if (dynamic_cast<const nashseek::ConfigError*>(&e)) return kExitParse;
  if (dynamic_cast<const nashseek::NonFiniteState*>(&e))
    return kExitStiffness;
  if (dynamic_cast<const nashseek::UncertifiedGains*>(&e))
    return kExitUncertified;
  if (dynamic_cast<const nashseek::ValidationError*>(&e) ||
      dynamic_cast<const nashseek::DimensionMismatch*>(&e) ||
      dynamic_cast<const nashseek::IndexOutOfRange*>(&e) ||
      dynamic_cast<const nashseek::NotStronglyMonotone*>(&e) ||
      dynamic_cast<const nashseek::SingularSystem*>(&e) ||
      dynamic_cast<const nashseek::DisconnectedGraph*>(&e) ||
      dynamic_cast<const nashseek::MissingGraph*>(&e))
    return kExitValidation;
  return kExitInternal;
}

void print_gain_json(const nashseek::GainSet& gains) {
  nlohmann::ordered_json j;
  j["strategy"] = nashseek::to_string(gains.kind);
  nlohmann::ordered_json k;
  if (gains.k1) k["k1"] = *gains.k1;
  if (gains.k2) k["k2"] = *gains.k2;
  if (gains.k3) k["k3"] = *gains.k3;
  if (gains.k4) k["k4"] = *gains.k4;
  j["gains"] = k;
  nlohmann::ordered_json eps;
  for (const auto& [name, value] : gains.eps) eps[name] = value;
  j["eps"] = eps;
  nlohmann::ordered_json margins;
  for (const auto& [name, value] : gains.margins) margins[name] = value;
  j["margins"] = margins;
  j["certified"] = gains.certified;
  std::cout << j.dump(2) << "\n";
}

int cmd_run(const ScenarioConfig& cfg, const nashseek::RunOptions& opts) {
  const auto result = nashseek::run_scenario(cfg, opts);
  std::cout << nashseek::format_report(result);
  return result.convergence.converged ? kExitOk : kExitNotConverged;
}

int cmd_gains(const ScenarioConfig& cfg, const nashseek::RunOptions& opts) {
  const auto game = nashseek::make_game(cfg);
  const auto gains = nashseek::resolve_gains(cfg, game);
  std::cout << "strategy: " << nashseek::to_string(cfg.strategy) << "\n";
  std::cout << "certified: " << (gains.certified ? "yes" : "NO (UNCERTIFIED)")
            << "\n";
  for (const auto& [name, value] : gains.margins)
    std::cout << "margin " << name << " = " << value
              << (value > 0.0 ? "" : "   <-- violated") << "\n";
  print_gain_json(gains);
  if (opts.strict_gains && !gains.certified) return kExitUncertified;
  return kExitOk;
}

int cmd_equilibrium(const ScenarioConfig& cfg) {
  const auto game = nashseek::make_game(cfg);
  const auto eq = nashseek::solve_quadratic(game);
  std::cout << std::setprecision(12);
  std::cout << "x* =";
  for (Eigen::Index i = 0; i < eq.x_star.size(); ++i)
    std::cout << " " << eq.x_star(i);
  std::cout << "\nresidual = " << eq.residual << "\n";
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& paths,
                const nashseek::RunOptions& opts) {
  std::printf("%-28s %-14s %-10s %-12s %-12s %-9s %s\n", "scenario",
              "strategy", "converged", "pos_err", "speed", "t_tol",
              "certified");
  bool all_converged = true;
  nashseek::RunOptions run_opts = opts;
  run_opts.write_outputs = false;
  for (const auto& path : paths) {
    const auto cfg = nashseek::parse_config_file(path);
    const auto result = nashseek::run_scenario(cfg, run_opts);
    all_converged = all_converged && result.convergence.converged;
    char t_tol[32] = "-";
    if (result.convergence.t_tol)
      std::snprintf(t_tol, sizeof(t_tol), "%.3g", *result.convergence.t_tol);
    std::printf("%-28s %-14s %-10s %-12.3e %-12.3e %-9s %s\n",
                result.name.c_str(), nashseek::to_string(cfg.strategy).c_str(),
                result.convergence.converged ? "yes" : "NO",
                result.convergence.final_pos_err,
                result.convergence.final_speed, t_tol,
                result.gains.certified ? "yes" : "no");
  }
  return all_converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Nash equilibrium seeking for second-order players without velocity "
      "measurements: simulation, gain certification and verification"};
  app.require_subcommand(1);

  std::string config_flag;
  std::string out_dir = ".";
  bool strict_gains = false;
  long seed = 0;
  app.add_option("--config", config_flag, "scenario config file");
  app.add_option("--out-dir", out_dir, "directory for file outputs");
  app.add_flag("--strict-gains", strict_gains,
               "refuse to run with uncertified gain sets");
  app.add_option("--seed", seed,
                 "seed for randomized validation helpers (scenario runs are "
                 "deterministic and ignore it)");

  std::string run_config, gains_config, eq_config;
  std::vector<std::string> compare_configs;
  auto* run = app.add_subcommand("run", "simulate a scenario and write outputs");
  run->add_option("config", run_config, "scenario config file");
  auto* gains =
      app.add_subcommand("gains", "synthesize or validate gains for a scenario");
  gains->add_option("config", gains_config, "scenario config file");
  auto* eq = app.add_subcommand("equilibrium",
                                "solve and print the Nash equilibrium");
  eq->add_option("config", eq_config, "scenario config file");
  auto* compare = app.add_subcommand(
      "compare", "run several scenarios and tabulate convergence");
  compare->add_option("configs", compare_configs, "scenario config files")
      ->expected(-1);

  // Let global flags (--out-dir, --strict-gains, ...) appear after the
  // subcommand as well.
  for (auto* sub : {run, gains, eq, compare}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  nashseek::RunOptions opts;
  opts.out_dir = out_dir;
  opts.strict_gains = strict_gains;

  try {
    if (run->parsed()) return cmd_run(load_config(run_config, config_flag), opts);
    if (gains->parsed())
      return cmd_gains(load_config(gains_config, config_flag), opts);
    if (eq->parsed()) return cmd_equilibrium(load_config(eq_config, config_flag));
    if (compare->parsed()) {
      if (compare_configs.empty() && !config_flag.empty())
        compare_configs.push_back(config_flag);
      if (compare_configs.empty())
        throw nashseek::ValidationError("compare needs config files");
      return cmd_compare(compare_configs, opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  }
  return kExitInternal;
}
