#include "nashseek/game.hpp"

#include <cmath>

#include "nashseek/errors.hpp"

namespace nashseek {

namespace {

std::vector<int> block_offsets(const std::vector<int>& dims) {
  std::vector<int> offs(dims.size());
  int acc = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    offs[i] = acc;
    acc += dims[i];
  }
  return offs;
}

}  // namespace

QuadraticGame::QuadraticGame(std::vector<int> action_dims,
                             std::vector<PlayerCost> costs) {
  if (action_dims.empty())
    throw ValidationError("game needs at least one player");
  if (costs.size() != action_dims.size())
    throw DimensionMismatch("one cost per player required");
  action_dims_ = std::move(action_dims);
  costs_ = std::move(costs);
  for (int d : action_dims_)
    if (d < 1) throw ValidationError("action dimensions must be >= 1");
  offsets_ = block_offsets(action_dims_);
  dim_ = offsets_.back() + action_dims_.back();

  for (int i = 0; i < n_players(); ++i) {
    const auto& c = costs_[i];
    if (c.quad.rows() != dim_ || c.quad.cols() != dim_ ||
        c.lin.size() != dim_)
      throw DimensionMismatch("cost coefficients of player " +
                              std::to_string(i + 1) + " must be DxD and D");
  }

  // Row block i of H is the own-action gradient map of f_i: the rows of the
  // symmetrized quadratic form, doubled.
  jac_.setZero(dim_, dim_);
  offset_.setZero(dim_);
  for (int i = 0; i < n_players(); ++i) {
    const int r = offsets_[i];
    const int d = action_dims_[i];
    jac_.middleRows(r, d) =
        costs_[i].quad.middleRows(r, d) + costs_[i].quad.middleCols(r, d).transpose();
    offset_.segment(r, d) = costs_[i].lin.segment(r, d);
  }
}

QuadraticGame QuadraticGame::from_jacobian(std::vector<int> action_dims,
                                           const Eigen::MatrixXd& jac,
                                           const Eigen::VectorXd& offset) {
  if (action_dims.empty())
    throw ValidationError("game needs at least one player");
  const auto offs = block_offsets(action_dims);
  const int dim = offs.back() + action_dims.back();
  if (jac.rows() != dim || jac.cols() != dim || offset.size() != dim)
    throw DimensionMismatch("jacobian must be DxD and offset length D");

  std::vector<PlayerCost> costs(action_dims.size());
  for (std::size_t i = 0; i < action_dims.size(); ++i) {
    const int r = offs[i];
    const int d = action_dims[i];
    const Eigen::MatrixXd own = jac.block(r, r, d, d);
    if ((own - own.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw ValidationError("own-action diagonal block " +
                            std::to_string(i + 1) +
                            " of the jacobian must be symmetric");
    // Own rows carry half of the diagonal block and the full off-diagonal
    // coupling; symmetrization then reproduces the requested row block.
    PlayerCost c;
    c.quad.setZero(dim, dim);
    c.quad.middleRows(r, d) = jac.middleRows(r, d);
    c.quad.block(r, r, d, d) = own / 2.0;
    c.lin.setZero(dim);
    c.lin.segment(r, d) = offset.segment(r, d);
    costs[i] = std::move(c);
  }
  return QuadraticGame(std::move(action_dims), std::move(costs));
}

QuadraticGame QuadraticGame::connectivity_five() {
  // Five mobile sensors with planar actions; each cost couples a player to
  // one other through a squared distance term.
  const int dim = 10;
  std::vector<int> dims(5, 2);
  std::vector<PlayerCost> costs(5);

  struct Own {
    double q1, l1, q2, l2, c;
    int partner;  // 0-based index of the coupled player
  };
  // f_i = q1 x_i1^2 + l1 x_i1 + q2 x_i2^2 + l2 x_i2 + c + |x_i - x_partner|^2
  const Own own[5] = {
      {1, 1, 2, 1, 1, 2}, {3, 2, 3, 3, 2, 2}, {5, 2, 5, 2, 3, 0},
      {6, 4, 6, 4, 4, 1}, {8, 6, 8, 6, 5, 3},
  };

  for (int i = 0; i < 5; ++i) {
    PlayerCost c;
    c.quad.setZero(dim, dim);
    c.lin.setZero(dim);
    const int r = 2 * i;
    const int p = 2 * own[i].partner;
    c.quad(r, r) = own[i].q1 + 1.0;
    c.quad(r + 1, r + 1) = own[i].q2 + 1.0;
    c.quad(p, p) += 1.0;
    c.quad(p + 1, p + 1) += 1.0;
    c.quad(r, p) = -1.0;
    c.quad(p, r) = -1.0;
    c.quad(r + 1, p + 1) = -1.0;
    c.quad(p + 1, r + 1) = -1.0;
    c.lin(r) = own[i].l1;
    c.lin(r + 1) = own[i].l2;
    c.constant = own[i].c;
    costs[i] = std::move(c);
  }
  return QuadraticGame(std::move(dims), std::move(costs));
}

int QuadraticGame::check_player(int i) const {
  if (i < 0 || i >= n_players())
    throw IndexOutOfRange("player index " + std::to_string(i) +
                          " outside [0, " + std::to_string(n_players()) + ")");
  return i;
}

void QuadraticGame::check_profile(const Eigen::VectorXd& x) const {
  if (x.size() != dim_)
    throw DimensionMismatch("profile has length " + std::to_string(x.size()) +
                            ", game dimension is " + std::to_string(dim_));
}

double QuadraticGame::eval_cost(int i, const Eigen::VectorXd& x) const {
  check_player(i);
  check_profile(x);
  const auto& c = costs_[i];
  return x.dot(c.quad * x) + c.lin.dot(x) + c.constant;
}

Eigen::VectorXd QuadraticGame::pseudo_gradient(const Eigen::VectorXd& x) const {
  check_profile(x);
  return jac_ * x + offset_;
}

Eigen::MatrixXd QuadraticGame::game_jacobian(const Eigen::VectorXd& x) const {
  check_profile(x);
  return jac_;
}

Eigen::VectorXd QuadraticGame::own_gradient(int i,
                                            const Eigen::VectorXd& profile) const {
  check_player(i);
  check_profile(profile);
  const int r = offsets_[i];
  const int d = action_dims_[i];
  return jac_.middleRows(r, d) * profile + offset_.segment(r, d);
}

Eigen::VectorXd QuadraticGame::pseudo_gradient_at_estimates(
    const Eigen::VectorXd& z) const {
  if (z.size() != static_cast<Eigen::Index>(n_players()) * dim_)
    throw DimensionMismatch("estimate stack must have length N*D");
  Eigen::VectorXd out(dim_);
  for (int i = 0; i < n_players(); ++i) {
    const int r = offsets_[i];
    const int d = action_dims_[i];
    out.segment(r, d) =
        jac_.middleRows(r, d) * z.segment(i * dim_, dim_) + offset_.segment(r, d);
  }
  return out;
}

GameConstants QuadraticGame::constants() const {
  const Eigen::MatrixXd sym = (jac_ + jac_.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const double m = eig.eigenvalues().minCoeff();
  if (m <= 0.0)
    throw NotStronglyMonotone(
        "symmetric part of the game Jacobian has smallest eigenvalue " +
        std::to_string(m) + "; pseudo-gradient is not strongly monotone");

  GameConstants c;
  c.monotonicity = m;
  c.jacobian_norm_bound =
      Eigen::JacobiSVD<Eigen::MatrixXd>(jac_).singularValues().maxCoeff();
  c.lipschitz.resize(n_players());
  for (int i = 0; i < n_players(); ++i) {
    const Eigen::MatrixXd block =
        jac_.middleRows(offsets_[i], action_dims_[i]);
    c.lipschitz(i) =
        Eigen::JacobiSVD<Eigen::MatrixXd>(block).singularValues().maxCoeff();
  }
  c.max_lipschitz = c.lipschitz.maxCoeff();
  c.n_players = n_players();
  return c;
}

}  // namespace nashseek
