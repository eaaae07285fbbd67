#ifndef NASHSEEK_EQUILIBRIUM_HPP
#define NASHSEEK_EQUILIBRIUM_HPP

#include <Eigen/Dense>

#include "nashseek/game.hpp"

namespace nashseek {

enum class SolveMethod { linear_solve, newton };

struct EquilibriumResult {
  Eigen::VectorXd x_star;
  double residual = 0.0;  // ||P(x_star)||
  SolveMethod method = SolveMethod::linear_solve;
  int iterations = 0;  // newton only
};

/// Solves the stationarity system H x = -b directly. Throws SingularSystem
/// when H is numerically singular (which contradicts strong monotonicity and
/// indicates a bad game definition).
EquilibriumResult solve_quadratic(const QuadraticGame& game);

/// Damped Newton iteration on P(x) = 0, used as an independent cross-check of
/// the closed-form solve. The step is halved while ||P|| fails to decrease,
/// with floor 2^-20. Throws NoConvergence after max_iter iterations.
EquilibriumResult solve_newton(const QuadraticGame& game,
                               const Eigen::VectorXd& x0, double tol,
                               int max_iter);

}  // namespace nashseek

#endif  // NASHSEEK_EQUILIBRIUM_HPP
