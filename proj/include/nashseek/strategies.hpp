#ifndef NASHSEEK_STRATEGIES_HPP
#define NASHSEEK_STRATEGIES_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nashseek/gains.hpp"
#include "nashseek/game.hpp"
#include "nashseek/graph.hpp"

namespace nashseek {

/// Slicing of the flat closed-loop state vector. Every strategy starts with
/// positions x (D) and velocities v (D); the internals differ:
///   observer:       x | v | xbar | vbar
///   filter:         x | v | xhat
///   dist-observer:  x | v | xbar | vbar | z (N*D)
///   dist-filter:    x | v | xhat | z (N*D)
/// z block i holds player i's estimate of the full action profile.
struct StateLayout {
  StrategyKind kind = StrategyKind::filter;
  int n_players = 0;
  int dim = 0;  // D
  std::vector<int> action_dims;  // per-player block sizes, summing to dim

  bool has_observer() const {
    return kind == StrategyKind::observer ||
           kind == StrategyKind::dist_observer;
  }
  bool has_filter() const { return !has_observer(); }
  bool distributed() const {
    return kind == StrategyKind::dist_observer ||
           kind == StrategyKind::dist_filter;
  }

  int x_offset() const { return 0; }
  int v_offset() const { return dim; }
  int xbar_offset() const { return 2 * dim; }   // observer kinds
  int vbar_offset() const { return 3 * dim; }   // observer kinds
  int xhat_offset() const { return 2 * dim; }   // filter kinds
  int z_offset() const { return has_observer() ? 4 * dim : 3 * dim; }
  int z_size() const { return distributed() ? n_players * dim : 0; }
  int size() const { return z_offset() + z_size(); }
};

/// Optional non-zero initializations for the state blocks; anything left
/// unset starts at zero, matching the reference simulations.
struct StateOverrides {
  std::optional<Eigen::VectorXd> v, xbar, vbar, xhat, z;
};

/// One closed-loop seeking strategy bound to a game, gains and (for the
/// distributed kinds) a communication graph. Right-hand-side evaluation is a
/// pure function of the state; instances are immutable and safe to share.
class Strategy {
 public:
  Strategy(StrategyKind kind, QuadraticGame game, GainSet gains,
           std::optional<UndirectedGraph> graph = std::nullopt);

  StrategyKind kind() const { return layout_.kind; }
  const StateLayout& layout() const { return layout_; }
  const QuadraticGame& game() const { return game_; }
  const GainSet& gains() const { return gains_; }
  const std::optional<UndirectedGraph>& graph() const { return graph_; }

  /// Assembles the initial state with v and all internals zero by default.
  Eigen::VectorXd init_state(const Eigen::VectorXd& x0,
                             const StateOverrides& overrides = {}) const;

  /// Time derivative of the closed-loop state (the field is autonomous; t is
  /// accepted for integrator compatibility).
  void rhs(double t, const Eigen::VectorXd& s, Eigen::VectorXd& ds) const;

  // Diagnostics derived from a state; they never enter the state vector.
  Eigen::VectorXd control(const Eigen::VectorXd& s) const;         // u
  Eigen::VectorXd velocity_estimate(const Eigen::VectorXd& s) const;  // vbar or y
  /// Observation errors stacked as [xbar - x; vbar - v] (observer kinds).
  Eigen::VectorXd observation_error(const Eigen::VectorXd& s) const;
  /// z - 1_N (x) x (distributed kinds).
  Eigen::VectorXd consensus_residual(const Eigen::VectorXd& s) const;

 private:
  void check_state(const Eigen::VectorXd& s) const;

  QuadraticGame game_;
  GainSet gains_;
  std::optional<UndirectedGraph> graph_;
  StateLayout layout_;
};

/// Free-function forms of the four vector fields.
void observer_rhs(const QuadraticGame& game, const GainSet& gains,
                  const Eigen::VectorXd& s, Eigen::VectorXd& ds);
void filter_rhs(const QuadraticGame& game, const GainSet& gains,
                const Eigen::VectorXd& s, Eigen::VectorXd& ds);
void dist_observer_rhs(const QuadraticGame& game, const UndirectedGraph& graph,
                       const GainSet& gains, const Eigen::VectorXd& s,
                       Eigen::VectorXd& ds);
void dist_filter_rhs(const QuadraticGame& game, const UndirectedGraph& graph,
                     const GainSet& gains, const Eigen::VectorXd& s,
                     Eigen::VectorXd& ds);

}  // namespace nashseek

#endif  // NASHSEEK_STRATEGIES_HPP
