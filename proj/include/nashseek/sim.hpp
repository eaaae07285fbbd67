#ifndef NASHSEEK_SIM_HPP
#define NASHSEEK_SIM_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "nashseek/strategies.hpp"

namespace nashseek {

struct SimConfig {
  double dt = 0.01;
  double t_end = 20.0;
  int record_stride = 1;  // steps between recorded samples
};

/// Time-stamped record of one integration. For strategy runs the layout and
/// gains are attached so states can be sliced and diagnostics recomputed.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> controls;  // u at each sample; empty for raw fields
  std::optional<StateLayout> layout;
  std::optional<GainSet> gains;
  bool stiffness_warning = false;

  std::size_t samples() const { return times.size(); }
  const Eigen::VectorXd& final_state() const { return states.back(); }
};

using VectorField =
    std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Classical fixed-step fourth-order Runge-Kutta. Deterministic: identical
/// inputs produce bit-identical trajectories. Throws NonFiniteState when a
/// state entry leaves the finite range (step size too large for the gains).
Trajectory integrate_rk4(const VectorField& rhs, const Eigen::VectorXd& s0,
                         const SimConfig& cfg);

/// Integrates a strategy's closed loop, recording controls and attaching the
/// layout. Emits a stiffness warning when dt exceeds 0.1 / max gain.
Trajectory simulate(const Strategy& strategy, const Eigen::VectorXd& s0,
                    const SimConfig& cfg);

struct ConvergenceReport {
  double final_pos_err = 0.0;  // ||x(T) - x*||
  double final_speed = 0.0;    // ||v(T)||
  std::optional<double> t_tol; // first sample with both below tol
  bool converged = false;
  double tol = 0.0;
};

/// Measures the two seeking limits on a recorded trajectory.
ConvergenceReport convergence_metrics(const Trajectory& traj,
                                      const Eigen::VectorXd& x_star,
                                      double tol);

/// Energy function of the filter strategy evaluated along the samples:
///   V = 1/2 ||v + P(x)||^2 + 1/2 ||x - x*||^2 + 1/2 ||y - v||^2.
/// Certified gains make this non-increasing. Throws WrongStrategyKind unless
/// the trajectory came from the centralized filter strategy.
std::vector<double> lyapunov_trace(const Trajectory& traj,
                                   const QuadraticGame& game,
                                   const Eigen::VectorXd& x_star);

/// Step-size heuristics: simulations warn above warn_dt and the scenario
/// runner defaults to auto_dt when the configuration does not pin dt.
double stiffness_warn_dt(const GainSet& gains);
double auto_dt(const GainSet& gains);

}  // namespace nashseek

#endif  // NASHSEEK_SIM_HPP
