#include "nashseek/equilibrium.hpp"

#include <cmath>

#include "nashseek/errors.hpp"

namespace nashseek {

EquilibriumResult solve_quadratic(const QuadraticGame& game) {
  const Eigen::MatrixXd& jac = game.jacobian_matrix();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
  if (!lu.isInvertible())
    throw SingularSystem("game Jacobian is numerically singular");

  EquilibriumResult res;
  res.method = SolveMethod::linear_solve;
  res.x_star = lu.solve(-game.offset());
  res.residual = game.pseudo_gradient(res.x_star).norm();
  const double scale = std::max(1.0, game.offset().norm());
  if (res.residual > 1e-10 * scale)
    throw SingularSystem("stationarity residual " +
                         std::to_string(res.residual) +
                         " too large; system is ill-conditioned");
  return res;
}

EquilibriumResult solve_newton(const QuadraticGame& game,
                               const Eigen::VectorXd& x0, double tol,
                               int max_iter) {
  if (tol <= 0.0) throw ValidationError("newton tolerance must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be >= 1");
  if (x0.size() != game.dim())
    throw DimensionMismatch("x0 must have the game dimension");

  constexpr double kStepFloor = 1.0 / (1 << 20);

  Eigen::VectorXd x = x0;
  Eigen::VectorXd grad = game.pseudo_gradient(x);
  for (int it = 0; it < max_iter; ++it) {
    if (grad.norm() <= tol) {
      EquilibriumResult res;
      res.method = SolveMethod::newton;
      res.x_star = x;
      res.residual = grad.norm();
      res.iterations = it;
      return res;
    }
    const Eigen::VectorXd step =
        game.game_jacobian(x).partialPivLu().solve(-grad);
    // Backtrack while the residual does not improve; vestigial for affine P
    // but keeps the oracle honest for other game classes.
    double alpha = 1.0;
    Eigen::VectorXd x_next = x + step;
    Eigen::VectorXd grad_next = game.pseudo_gradient(x_next);
    while (grad_next.norm() >= grad.norm() && alpha > kStepFloor) {
      alpha /= 2.0;
      x_next = x + alpha * step;
      grad_next = game.pseudo_gradient(x_next);
    }
    x = std::move(x_next);
    grad = std::move(grad_next);
  }
  if (grad.norm() <= tol) {
    EquilibriumResult res;
    res.method = SolveMethod::newton;
    res.x_star = x;
    res.residual = grad.norm();
    res.iterations = max_iter;
    return res;
  }
  throw NoConvergence("newton did not reach tolerance " + std::to_string(tol) +
                      " in " + std::to_string(max_iter) + " iterations");
}

}  // namespace nashseek
