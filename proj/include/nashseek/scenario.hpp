#ifndef NASHSEEK_SCENARIO_HPP
#define NASHSEEK_SCENARIO_HPP

#include <string>

#include "nashseek/config.hpp"
#include "nashseek/equilibrium.hpp"
#include "nashseek/errors.hpp"
#include "nashseek/output.hpp"
#include "nashseek/sim.hpp"

namespace nashseek {

struct RunOptions {
  std::string out_dir = ".";
  bool strict_gains = false;    // refuse uncertified gain sets
  bool write_outputs = true;
};

/// Thrown when --strict-gains rejects an uncertified gain set.
class UncertifiedGains : public Error {
 public:
  using Error::Error;
};

struct ScenarioResult {
  std::string name;
  GainSet gains;
  MarginReport report;
  EquilibriumResult equilibrium;
  SimConfig sim;
  Trajectory trajectory;
  ConvergenceReport convergence;
};

/// Resolves the gain set for a scenario: synthesized with the configured
/// margin, or the manual values re-validated (eps grid-optimized).
GainSet resolve_gains(const ScenarioConfig& cfg, const QuadraticGame& game,
                      MarginReport* report_out = nullptr);

/// Effective simulation settings: dt defaults to the step-size guard, the
/// record stride to roughly two thousand samples.
SimConfig resolve_sim_config(const ScenarioConfig& cfg, const GainSet& gains);

/// Initial positions: the configured x0, the reference start for the builtin
/// game, or zero.
Eigen::VectorXd resolve_x0(const ScenarioConfig& cfg,
                           const QuadraticGame& game);

/// Runs game -> gains -> strategy -> integration -> metrics and writes the
/// configured outputs under opts.out_dir.
ScenarioResult run_scenario(const ScenarioConfig& cfg,
                            const RunOptions& opts = {});

/// Human-readable scenario report (also written as the 'report' output).
std::string format_report(const ScenarioResult& result);

}  // namespace nashseek

#endif  // NASHSEEK_SCENARIO_HPP
