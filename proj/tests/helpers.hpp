// Shared fixtures and independent oracles for the test suites. Everything in
// here must stay independent of the implementation paths it checks: gradients
// come from finite differences of the cost values, monotonicity constants
// from random sampling, and eigenvalue claims are verified through
// determinant sign tests rather than the production eigensolver.
#ifndef NASHSEEK_TESTS_HELPERS_HPP
#define NASHSEEK_TESTS_HELPERS_HPP

#include <Eigen/Dense>
#include <random>
#include <utility>
#include <vector>

#include "nashseek/gains.hpp"
#include "nashseek/game.hpp"
#include "nashseek/graph.hpp"

namespace nashseek::testing {

// --- builtin game reference data -------------------------------------------

// Closed-form equilibrium of the builtin five-player game, obtained by hand
// from the decoupled per-coordinate linear systems:
//   coordinate 1:  4a - 2c = -1, 12c - 2a = -2  => a = -4/11,  c = -5/22,
//                  then x21 = (2c - 2)/8, x41 = (x21 - 2)/7, x51 = (x41-3)/9
//   coordinate 2 analogously with its own coefficients.
inline Eigen::VectorXd builtin_equilibrium_exact() {
  Eigen::VectorXd x(10);
  x << -4.0 / 11.0, -4.0 / 17.0, -27.0 / 88.0, -29.0 / 68.0, -5.0 / 22.0,
      -7.0 / 34.0, -29.0 / 88.0, -165.0 / 476.0, -293.0 / 792.0,
      -177.0 / 476.0;
  return x;
}

// Reference ten-entry equilibrium as tabulated for this game (three-decimal
// precision; two entries are truncated rather than rounded).
inline Eigen::VectorXd builtin_equilibrium_reference() {
  Eigen::VectorXd x(10);
  x << -0.363, -0.235, -0.307, -0.426, -0.227, -0.206, -0.329, -0.347, -0.370,
      -0.372;
  return x;
}

inline Eigen::VectorXd builtin_start() {
  Eigen::VectorXd x(10);
  x << -0.5, 0.5, -1.0, 0.0, 1.0, 0.0, 0.0, -1.0, -1.0, -1.5;
  return x;
}

inline UndirectedGraph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return UndirectedGraph(n, edges);
}

// --- random generators ------------------------------------------------------

// Strongly monotone quadratic game with scalar actions: H = S + S' + 2n I.
inline QuadraticGame random_monotone_game(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = unit(rng);
  const Eigen::MatrixXd jac =
      s + s.transpose() + 2.0 * n * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = 3.0 * unit(rng);
  return QuadraticGame::from_jacobian(std::vector<int>(n, 1), jac, b);
}

inline UndirectedGraph random_connected_graph(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> edges;
  // Random spanning tree, then a few extra edges.
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.emplace_back(pick(rng), v);
  }
  std::uniform_int_distribution<int> node(0, n - 1);
  for (int extra = 0; extra < n / 2; ++extra) {
    const int a = node(rng), b = node(rng);
    if (a != b) edges.emplace_back(a, b);
  }
  return UndirectedGraph(n, edges);
}

inline Eigen::VectorXd random_vector(int n, std::mt19937_64& rng, double lo,
                                     double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

// --- oracles ----------------------------------------------------------------

// Central finite differences of the cost values, independent of the analytic
// gradient path.
inline Eigen::VectorXd finite_difference_gradient(const QuadraticGame& game,
                                                  int player,
                                                  const Eigen::VectorXd& x,
                                                  double step = 1e-5) {
  const int off = game.block_offset(player);
  const int dim = game.block_dim(player);
  Eigen::VectorXd grad(dim);
  for (int c = 0; c < dim; ++c) {
    Eigen::VectorXd hi = x, lo = x;
    hi(off + c) += step;
    lo(off + c) -= step;
    grad(c) =
        (game.eval_cost(player, hi) - game.eval_cost(player, lo)) / (2 * step);
  }
  return grad;
}

// Smallest sampled monotonicity quotient (x-y)'(P(x)-P(y)) / ||x-y||^2; the
// true constant is the infimum, so samples never fall below it.
inline double sampled_monotonicity(const QuadraticGame& game, int samples,
                                   std::mt19937_64& rng, double lo = -5.0,
                                   double hi = 5.0) {
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = random_vector(game.dim(), rng, lo, hi);
    const Eigen::VectorXd y = random_vector(game.dim(), rng, lo, hi);
    const double d2 = (x - y).squaredNorm();
    if (d2 < 1e-12) continue;
    const double quot =
        (x - y).dot(game.pseudo_gradient(x) - game.pseudo_gradient(y)) / d2;
    best = std::min(best, quot);
  }
  return best;
}

// Verifies that `lambda` is the smallest eigenvalue of the symmetric matrix
// M without using a symmetric eigensolver: (a) det(M - t I) (LU) stays
// positive on a grid strictly below lambda, so no eigenvalue lies there;
// (b) M - lambda I is rank deficient (smallest singular value ~ 0).
inline bool verify_smallest_eigenvalue(const Eigen::MatrixXd& m, double lambda,
                                       double tol = 1e-8) {
  const int n = static_cast<int>(m.rows());
  double gershgorin_lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius += std::abs(m(i, j));
    gershgorin_lo = std::min(gershgorin_lo, m(i, i) - radius);
  }
  for (int s = 0; s < 200; ++s) {
    const double t =
        gershgorin_lo + (lambda - 10 * tol - gershgorin_lo) * s / 199.0;
    if (t >= lambda - 10 * tol) break;
    const double det = (m - t * Eigen::MatrixXd::Identity(n, n)).determinant();
    if (det <= 0.0) return false;  // an eigenvalue below lambda
  }
  const double sigma_min =
      Eigen::JacobiSVD<Eigen::MatrixXd>(
          m - lambda * Eigen::MatrixXd::Identity(n, n))
          .singularValues()
          .minCoeff();
  return sigma_min <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

// --- gain helpers -----------------------------------------------------------

inline GameConstants toy_constants(double m, double h, int n,
                                   std::vector<double> lipschitz) {
  GameConstants c;
  c.monotonicity = m;
  c.jacobian_norm_bound = h;
  c.lipschitz = Eigen::Map<Eigen::VectorXd>(lipschitz.data(),
                                            static_cast<int>(lipschitz.size()));
  c.max_lipschitz = c.lipschitz.maxCoeff();
  c.n_players = n;
  return c;
}

inline GainSet manual_gains(StrategyKind kind, double k1, double k2,
                            double k3 = 0.0, double k4 = 0.0) {
  GainSet g;
  g.kind = kind;
  g.k1 = k1;
  g.k2 = k2;
  if (k3 > 0.0) g.k3 = k3;
  if (k4 > 0.0) g.k4 = k4;
  return g;
}

}  // namespace nashseek::testing

#endif  // NASHSEEK_TESTS_HELPERS_HPP
