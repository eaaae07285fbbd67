#ifndef NASHSEEK_GAME_HPP
#define NASHSEEK_GAME_HPP

#include <Eigen/Dense>
#include <vector>

namespace nashseek {

/// One player's full cost f_i(x) = x' quad x + lin' x + constant over the
/// stacked action profile x.
struct PlayerCost {
  Eigen::MatrixXd quad;
  Eigen::VectorXd lin;
  double constant = 0.0;
};

/// Constants entering every gain condition: the strong-monotonicity constant
/// of the pseudo-gradient, the spectral bound on the game Jacobian, and the
/// per-player Lipschitz constants of the own-action gradients.
struct GameConstants {
  double monotonicity = 0.0;        // smallest eigenvalue of sym(H)
  double jacobian_norm_bound = 0.0; // largest singular value of H
  Eigen::VectorXd lipschitz;        // per player, largest singular value of its row block
  double max_lipschitz = 0.0;
  int n_players = 0;
};

/// A game whose costs are quadratic in the stacked action profile, so the
/// pseudo-gradient is the affine map P(x) = H x + b with constant Jacobian H.
///
/// Coordinate ordering is player-major: x_1_1, ..., x_1_d1, x_2_1, ...
/// Player indices are 0-based throughout the API.
class QuadraticGame {
 public:
  /// Builds the game from per-player cost coefficients; H and b are derived
  /// from the symmetrized quadratic forms.
  QuadraticGame(std::vector<int> action_dims, std::vector<PlayerCost> costs);

  /// Builds a game directly from an affine pseudo-gradient P(x) = jac x +
  /// offset, synthesizing costs consistent with it. The own-action diagonal
  /// blocks of jac must be symmetric (they are Hessian blocks of the costs).
  static QuadraticGame from_jacobian(std::vector<int> action_dims,
                                     const Eigen::MatrixXd& jac,
                                     const Eigen::VectorXd& offset);

  /// The built-in five-player connectivity-control game (two-dimensional
  /// actions, D = 10).
  static QuadraticGame connectivity_five();

  int n_players() const { return static_cast<int>(action_dims_.size()); }
  int dim() const { return dim_; }  // D = sum of action dims
  const std::vector<int>& action_dims() const { return action_dims_; }
  int block_offset(int i) const { return offsets_[check_player(i)]; }
  int block_dim(int i) const { return action_dims_[check_player(i)]; }

  const Eigen::MatrixXd& jacobian_matrix() const { return jac_; }
  const Eigen::VectorXd& offset() const { return offset_; }
  const std::vector<PlayerCost>& costs() const { return costs_; }

  /// f_i evaluated at the full profile x.
  double eval_cost(int i, const Eigen::VectorXd& x) const;

  /// P(x) = H x + b; block i is the gradient of f_i with respect to player
  /// i's own action only.
  Eigen::VectorXd pseudo_gradient(const Eigen::VectorXd& x) const;

  /// The game Jacobian at x; constant for quadratic games.
  Eigen::MatrixXd game_jacobian(const Eigen::VectorXd& x) const;

  /// Block i of P evaluated at an arbitrary profile estimate.
  Eigen::VectorXd own_gradient(int i, const Eigen::VectorXd& profile) const;

  /// Stacked pseudo-gradient where block i is evaluated at player i's own
  /// profile estimate z_i; z holds the N estimates of length D back to back.
  Eigen::VectorXd pseudo_gradient_at_estimates(const Eigen::VectorXd& z) const;

  /// Computes m, h and the l_i; throws NotStronglyMonotone when the symmetric
  /// part of H has a non-positive eigenvalue.
  GameConstants constants() const;

 private:
  int check_player(int i) const;
  void check_profile(const Eigen::VectorXd& x) const;

  std::vector<int> action_dims_;
  std::vector<int> offsets_;
  int dim_ = 0;
  std::vector<PlayerCost> costs_;
  Eigen::MatrixXd jac_;     // H
  Eigen::VectorXd offset_;  // b
};

}  // namespace nashseek

#endif  // NASHSEEK_GAME_HPP
