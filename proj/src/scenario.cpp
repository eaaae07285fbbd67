#include "nashseek/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nashseek/strategies.hpp"

namespace nashseek {

namespace {

const Eigen::VectorXd& connectivity_five_start() {
  static const Eigen::VectorXd x0 = [] {
    Eigen::VectorXd v(10);
    v << -0.5, 0.5, -1.0, 0.0, 1.0, 0.0, 0.0, -1.0, -1.0, -1.5;
    return v;
  }();
  return x0;
}

std::optional<UndirectedGraph> make_graph(const ScenarioConfig& cfg,
                                          const QuadraticGame& game) {
  if (!cfg.edges) return std::nullopt;
  return UndirectedGraph(game.n_players(), *cfg.edges);
}

}  // namespace

GainSet resolve_gains(const ScenarioConfig& cfg, const QuadraticGame& game,
                      MarginReport* report_out) {
  const GameConstants constants = game.constants();
  const auto graph = make_graph(cfg, game);
  const UndirectedGraph* graph_ptr = graph ? &*graph : nullptr;
  const bool distributed = cfg.strategy == StrategyKind::dist_observer ||
                           cfg.strategy == StrategyKind::dist_filter;
  if (distributed && !graph)
    throw MissingGraph("strategy " + to_string(cfg.strategy) +
                       " needs an 'edges' list");

  GainSet gains;
  if (cfg.gains.automatic) {
    switch (cfg.strategy) {
      case StrategyKind::observer:
        gains = synth_observer_gains(constants, cfg.gains.margin);
        break;
      case StrategyKind::filter:
        gains = synth_filter_gains(constants, cfg.gains.margin);
        break;
      case StrategyKind::dist_observer:
        gains = synth_dist_observer_gains(constants, *graph, cfg.gains.margin);
        break;
      case StrategyKind::dist_filter:
        gains = synth_dist_filter_gains(constants, *graph, cfg.gains.margin);
        break;
    }
  } else {
    gains.kind = cfg.strategy;
    gains.k1 = cfg.gains.k1;
    gains.k2 = cfg.gains.k2;
    gains.k3 = cfg.gains.k3;
    gains.k4 = cfg.gains.k4;
  }

  const MarginReport report =
      validate_gains(cfg.strategy, gains, constants, graph_ptr);
  gains.margins = report.margins;
  gains.eps = report.eps;
  gains.certified = report.certified;
  if (report_out) *report_out = report;
  return gains;
}

SimConfig resolve_sim_config(const ScenarioConfig& cfg, const GainSet& gains) {
  SimConfig sim;
  sim.t_end = cfg.t_end;
  sim.dt = cfg.dt ? *cfg.dt : std::min(auto_dt(gains), cfg.t_end);
  if (cfg.record_stride) {
    sim.record_stride = *cfg.record_stride;
  } else {
    const long steps = std::lround(sim.t_end / sim.dt);
    sim.record_stride = static_cast<int>(std::max(1L, steps / 2000));
  }
  return sim;
}

Eigen::VectorXd resolve_x0(const ScenarioConfig& cfg,
                           const QuadraticGame& game) {
  if (cfg.x0) return *cfg.x0;
  if (cfg.builtin_game) return connectivity_five_start();
  return Eigen::VectorXd::Zero(game.dim());
}

ScenarioResult run_scenario(const ScenarioConfig& cfg,
                            const RunOptions& opts) {
  ScenarioResult result;
  result.name = cfg.name;

  const QuadraticGame game = make_game(cfg);
  result.gains = resolve_gains(cfg, game, &result.report);
  if (opts.strict_gains && !result.gains.certified)
    throw UncertifiedGains("scenario '" + cfg.name +
                           "' uses an uncertified gain set");

  result.equilibrium = solve_quadratic(game);
  result.sim = resolve_sim_config(cfg, result.gains);

  Strategy strategy(cfg.strategy, game, result.gains, make_graph(cfg, game));
  const Eigen::VectorXd s0 = strategy.init_state(resolve_x0(cfg, game));
  result.trajectory = simulate(strategy, s0, result.sim);
  result.convergence = convergence_metrics(result.trajectory,
                                           result.equilibrium.x_star, cfg.tol);

  if (opts.write_outputs && cfg.outputs.any()) {
    namespace fs = std::filesystem;
    const fs::path dir(opts.out_dir);
    fs::create_directories(dir);
    if (cfg.outputs.csv)
      emit_csv(result.trajectory, (dir / *cfg.outputs.csv).string());
    if (cfg.outputs.positions_svg)
      emit_svg_plot(result.trajectory, PlotKind::positions,
                    (dir / *cfg.outputs.positions_svg).string());
    if (cfg.outputs.velocities_svg)
      emit_svg_plot(result.trajectory, PlotKind::velocities,
                    (dir / *cfg.outputs.velocities_svg).string());
    if (cfg.outputs.report) {
      std::ofstream out(dir / *cfg.outputs.report, std::ios::binary);
      if (!out)
        throw Error("cannot open report output for writing");
      out << format_report(result);
    }
  }
  return result;
}

std::string format_report(const ScenarioResult& r) {
  std::ostringstream out;
  out << "scenario: " << r.name << "\n";
  out << "strategy: " << to_string(r.gains.kind) << "\n";
  out << "gains:";
  const auto put_gain = [&](const char* name, const std::optional<double>& k) {
    if (k) out << " " << name << "=" << *k;
  };
  put_gain("k1", r.gains.k1);
  put_gain("k2", r.gains.k2);
  put_gain("k3", r.gains.k3);
  put_gain("k4", r.gains.k4);
  out << "\n";
  if (!r.gains.eps.empty()) {
    out << "eps:";
    for (const auto& [name, value] : r.gains.eps)
      out << " " << name << "=" << value;
    out << "\n";
  }
  out << "margins:";
  for (const auto& [name, value] : r.gains.margins)
    out << " " << name << "=" << value;
  out << "\n";
  out << "certified: " << (r.gains.certified ? "yes" : "NO (UNCERTIFIED)")
      << "\n";
  out << "equilibrium:";
  for (Eigen::Index i = 0; i < r.equilibrium.x_star.size(); ++i)
    out << " " << r.equilibrium.x_star(i);
  out << "\n";
  out << "equilibrium residual: " << r.equilibrium.residual << "\n";
  out << "sim: dt=" << r.sim.dt << " t_end=" << r.sim.t_end
      << " record_stride=" << r.sim.record_stride << "\n";
  if (r.trajectory.stiffness_warning)
    out << "warning: dt exceeds the stiffness guard for these gains\n";
  out << "final position error: " << r.convergence.final_pos_err << "\n";
  out << "final speed: " << r.convergence.final_speed << "\n";
  if (r.convergence.t_tol)
    out << "time to tolerance " << r.convergence.tol << ": "
        << *r.convergence.t_tol << "\n";
  out << "converged: " << (r.convergence.converged ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace nashseek
