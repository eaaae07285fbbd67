#include "nashseek/sim.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include "nashseek/errors.hpp"

namespace nashseek {

namespace {

void check_sim_config(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ValidationError("dt must be positive");
  if (cfg.t_end < cfg.dt) throw ValidationError("t_end must be at least dt");
  if (cfg.record_stride < 1)
    throw ValidationError("record_stride must be >= 1");
}

long step_count(const SimConfig& cfg) {
  return std::max<long>(1, std::lround(cfg.t_end / cfg.dt));
}

template <typename Recorder>
void rk4_loop(const VectorField& rhs, const Eigen::VectorXd& s0,
              const SimConfig& cfg, Recorder&& record) {
  const long n_steps = step_count(cfg);
  const double dt = cfg.dt;

  Eigen::VectorXd s = s0;
  Eigen::VectorXd k1(s.size()), k2(s.size()), k3(s.size()), k4(s.size());
  Eigen::VectorXd tmp(s.size());

  record(0.0, s);
  for (long step = 1; step <= n_steps; ++step) {
    const double t = (step - 1) * dt;
    rhs(t, s, k1);
    tmp = s + (dt / 2.0) * k1;
    rhs(t + dt / 2.0, tmp, k2);
    tmp = s + (dt / 2.0) * k2;
    rhs(t + dt / 2.0, tmp, k3);
    tmp = s + dt * k3;
    rhs(t + dt, tmp, k4);
    s += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (!s.allFinite())
      throw NonFiniteState("state became non-finite at t = " +
                               std::to_string(step * dt) +
                               "; reduce dt or the gains",
                           step * dt, step);
    if (step % cfg.record_stride == 0 || step == n_steps)
      record(step * dt, s);
  }
}

}  // namespace

Trajectory integrate_rk4(const VectorField& rhs, const Eigen::VectorXd& s0,
                         const SimConfig& cfg) {
  check_sim_config(cfg);
  Trajectory traj;
  rk4_loop(rhs, s0, cfg, [&](double t, const Eigen::VectorXd& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
  });
  return traj;
}

Trajectory simulate(const Strategy& strategy, const Eigen::VectorXd& s0,
                    const SimConfig& cfg) {
  check_sim_config(cfg);
  Trajectory traj;
  traj.layout = strategy.layout();
  traj.gains = strategy.gains();
  if (cfg.dt > stiffness_warn_dt(strategy.gains())) {
    traj.stiffness_warning = true;
    std::cerr << "warning: dt = " << cfg.dt
              << " exceeds the stiffness guard 0.1/max-gain = "
              << stiffness_warn_dt(strategy.gains()) << "\n";
  }
  const VectorField rhs = [&strategy](double t, const Eigen::VectorXd& s,
                                      Eigen::VectorXd& ds) {
    strategy.rhs(t, s, ds);
  };
  rk4_loop(rhs, s0, cfg, [&](double t, const Eigen::VectorXd& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.controls.push_back(strategy.control(s));
  });
  return traj;
}

ConvergenceReport convergence_metrics(const Trajectory& traj,
                                      const Eigen::VectorXd& x_star,
                                      double tol) {
  if (traj.samples() == 0) throw ValidationError("trajectory is empty");
  if (!traj.layout)
    throw WrongStrategyKind(
        "convergence metrics need a strategy trajectory with a state layout");
  const StateLayout& lay = *traj.layout;
  if (x_star.size() != lay.dim)
    throw DimensionMismatch("x_star must have the game dimension");

  ConvergenceReport rep;
  rep.tol = tol;
  const Eigen::VectorXd& last = traj.final_state();
  rep.final_pos_err = (last.segment(lay.x_offset(), lay.dim) - x_star).norm();
  rep.final_speed = last.segment(lay.v_offset(), lay.dim).norm();
  rep.converged = rep.final_pos_err < tol && rep.final_speed < tol;
  for (std::size_t i = 0; i < traj.samples(); ++i) {
    const Eigen::VectorXd& s = traj.states[i];
    if ((s.segment(lay.x_offset(), lay.dim) - x_star).norm() < tol &&
        s.segment(lay.v_offset(), lay.dim).norm() < tol) {
      rep.t_tol = traj.times[i];
      break;
    }
  }
  return rep;
}

std::vector<double> lyapunov_trace(const Trajectory& traj,
                                   const QuadraticGame& game,
                                   const Eigen::VectorXd& x_star) {
  if (!traj.layout || traj.layout->kind != StrategyKind::filter)
    throw WrongStrategyKind(
        "the energy trace is defined for the centralized filter strategy");
  if (!traj.gains || !traj.gains->k2)
    throw ValidationError("trajectory carries no filter gains");
  const StateLayout& lay = *traj.layout;
  if (x_star.size() != lay.dim)
    throw DimensionMismatch("x_star must have the game dimension");
  const double k2 = *traj.gains->k2;

  std::vector<double> trace;
  trace.reserve(traj.samples());
  for (const Eigen::VectorXd& s : traj.states) {
    const auto x = s.segment(lay.x_offset(), lay.dim);
    const auto v = s.segment(lay.v_offset(), lay.dim);
    const auto xhat = s.segment(lay.xhat_offset(), lay.dim);
    const Eigen::VectorXd ybar = (-xhat + k2 * x) - v;
    const double value =
        0.5 * (v + game.pseudo_gradient(x)).squaredNorm() +
        0.5 * (x - x_star).squaredNorm() + 0.5 * ybar.squaredNorm();
    trace.push_back(value);
  }
  return trace;
}

double stiffness_warn_dt(const GainSet& gains) {
  const double kmax = gains.max_gain();
  return kmax > 0.0 ? 0.1 / kmax : std::numeric_limits<double>::infinity();
}

double auto_dt(const GainSet& gains) {
  const double kmax = gains.max_gain();
  const double guard =
      kmax > 0.0 ? 0.05 / kmax : std::numeric_limits<double>::infinity();
  return std::min(guard, 0.01);
}

}  // namespace nashseek
