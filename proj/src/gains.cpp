#include "nashseek/gains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nashseek/errors.hpp"

namespace nashseek {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::observer: return "observer";
    case StrategyKind::filter: return "filter";
    case StrategyKind::dist_observer: return "dist-observer";
    case StrategyKind::dist_filter: return "dist-filter";
  }
  return "unknown";
}

std::optional<StrategyKind> strategy_kind_from_string(const std::string& s) {
  if (s == "observer") return StrategyKind::observer;
  if (s == "filter") return StrategyKind::filter;
  if (s == "dist-observer") return StrategyKind::dist_observer;
  if (s == "dist-filter") return StrategyKind::dist_filter;
  return std::nullopt;
}

double GainSet::max_gain() const {
  double kmax = 0.0;
  for (const auto& k : {k1, k2, k3, k4})
    if (k) kmax = std::max(kmax, *k);
  return kmax;
}

double GainSet::min_margin() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [name, value] : margins) lo = std::min(lo, value);
  return lo;
}

double MarginReport::min_margin() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [name, value] : margins) lo = std::min(lo, value);
  return lo;
}

namespace {

// Coefficient of the ||v + P(x)|| * ||x - x*|| cross term appearing in every
// certification inequality: h sqrt(N) max_i l_i + 1.
double cross_coupling(const GameConstants& c) {
  return c.jacobian_norm_bound * std::sqrt(double(c.n_players)) *
             c.max_lipschitz +
         1.0;
}

NamedValues observer_margins(double k1, double eps1, double eps2,
                             const GameConstants& c) {
  const double cpl = cross_coupling(c);
  const double rho_grad =
      k1 - c.jacobian_norm_bound - cpl / (2.0 * eps1) - k1 / (2.0 * eps2);
  const double rho_pos = c.monotonicity - cpl * eps1 / 2.0;
  return {{"rho_grad", rho_grad}, {"rho_pos", rho_pos}};
}

NamedValues filter_margins(double k1, double k2, double eps,
                           const GameConstants& c) {
  const double cpl = cross_coupling(c);
  const double rho_pos = c.monotonicity - cpl / (2.0 * eps);
  const double rho_grad = k1 - c.jacobian_norm_bound - eps * cpl / 2.0;
  const double rho_filter = k2 - k1;
  return {{"rho_pos", rho_pos},
          {"rho_grad", rho_grad},
          {"rho_filter", rho_filter}};
}

NamedValues dist_observer_margins(double k1, double k4, double eps1,
                                  double eps2, double eps3,
                                  const GameConstants& c, double lambda) {
  const double cpl = cross_coupling(c);
  const double n = c.n_players;
  const double ml = c.max_lipschitz;
  const double rho_grad = k1 - c.jacobian_norm_bound - cpl / (2.0 * eps1) -
                          std::sqrt(n) / 2.0 - ml / 2.0 - k1 / (2.0 * eps3);
  const double rho_pos =
      c.monotonicity - cpl * eps1 / 2.0 - n * ml * eps2 / 2.0;
  const double rho_consensus = k4 * lambda - std::sqrt(n) / 2.0 -
                               n * ml / (2.0 * eps2) - k1 * k1 * ml / 2.0;
  return {{"rho_grad", rho_grad},
          {"rho_pos", rho_pos},
          {"rho_consensus", rho_consensus}};
}

double symmetric_2x2_lambda_min(double a, double c, double b) {
  // Eigenvalues of [[a, b], [b, c]].
  const double mid = (a + c) / 2.0;
  const double rad = std::hypot((c - a) / 2.0, b);
  return mid - rad;
}

NamedValues dist_filter_margins(double k1, double k2, double k3,
                                const GameConstants& c, double lambda) {
  const double cpl = cross_coupling(c);
  const double n = c.n_players;
  const double ml = c.max_lipschitz;
  const double lambda_a = symmetric_2x2_lambda_min(
      c.monotonicity, k1 - c.jacobian_norm_bound, -cpl / 2.0);
  const double gap = k2 - k1;
  const double chi = -(2.0 * k1 * ml + std::sqrt(n) + n * ml) / 2.0;
  const double lambda_a1 =
      symmetric_2x2_lambda_min(std::min(lambda_a, gap), k3 * lambda, chi);
  return {{"lambda_min_A", lambda_a},
          {"k2_minus_k1", gap},
          {"lambda_min_A1", lambda_a1}};
}

bool all_positive(const NamedValues& margins) {
  return std::all_of(margins.begin(), margins.end(),
                     [](const auto& m) { return m.second > 0.0; });
}

void require_valid(const GameConstants& c) {
  if (c.monotonicity <= 0.0)
    throw NotStronglyMonotone("gain synthesis needs a positive monotonicity "
                              "constant");
}

double require_positive_spectrum(const UndirectedGraph& g) {
  const double lambda = augmented_spectrum(g).lambda_min;
  if (lambda <= 0.0)
    throw ValidationError(
        "consensus spectrum is degenerate (single-node graph); distributed "
        "strategies need at least two players");
  return lambda;
}

double get_gain(const std::optional<double>& k, const char* name) {
  if (!k)
    throw ValidationError(std::string("gain ") + name +
                          " is required for this strategy");
  if (*k <= 0.0)
    throw ValidationError(std::string("gain ") + name + " must be positive");
  return *k;
}

std::optional<double> find_eps(const NamedValues& eps, const std::string& n) {
  for (const auto& [name, value] : eps)
    if (name == n) return value;
  return std::nullopt;
}

}  // namespace

GainSet synth_observer_gains(const GameConstants& c, double margin) {
  require_valid(c);
  if (margin <= 1.0) throw ValidationError("margin must exceed 1");
  const double cpl = cross_coupling(c);

  // eps1 at half its feasible interval (0, 2m/cpl); eps2 = 1 > 1/2.
  const double eps1 = c.monotonicity / cpl;
  const double eps2 = 1.0;
  const double k1_bound = eps2 *
                          (2.0 * eps1 * c.jacobian_norm_bound + cpl) /
                          (eps1 * (2.0 * eps2 - 1.0));

  GainSet g;
  g.kind = StrategyKind::observer;
  g.k1 = margin * k1_bound;
  // Any positive pair keeps the error matrix [[-k2, 1], [-k3, 0]] Hurwitz
  // (characteristic polynomial s^2 + k2 s + k3).
  g.k2 = 1.0;
  g.k3 = 1.0;
  g.eps = {{"eps1", eps1}, {"eps2", eps2}};
  g.margins = observer_margins(*g.k1, eps1, eps2, c);
  g.certified = all_positive(g.margins);
  return g;
}

GainSet synth_filter_gains(const GameConstants& c, double margin) {
  require_valid(c);
  if (margin <= 1.0) throw ValidationError("margin must exceed 1");
  const double cpl = cross_coupling(c);

  const double eps = cpl / c.monotonicity;  // 2x its lower bound cpl / (2m)
  const double k1_bound = c.jacobian_norm_bound + eps * cpl / 2.0;

  GainSet g;
  g.kind = StrategyKind::filter;
  g.k1 = margin * k1_bound;
  g.k2 = margin * (*g.k1);
  g.eps = {{"eps", eps}};
  g.margins = filter_margins(*g.k1, *g.k2, eps, c);
  g.certified = all_positive(g.margins);
  return g;
}

GainSet synth_dist_observer_gains(const GameConstants& c,
                                  const UndirectedGraph& g, double margin) {
  require_valid(c);
  if (margin <= 1.0) throw ValidationError("margin must exceed 1");
  if (g.size() != c.n_players)
    throw DimensionMismatch("graph size must equal the player count");
  const double lambda = require_positive_spectrum(g);
  const double cpl = cross_coupling(c);
  const double n = c.n_players;
  const double ml = c.max_lipschitz;

  // The position margin must absorb both epsilon terms; give each a quarter
  // of the monotonicity budget so rho_pos lands at exactly m/2.
  const double eps1 = c.monotonicity / (2.0 * cpl);
  const double eps2 = ml > 0.0 ? c.monotonicity / (2.0 * n * ml) : 1.0;
  const double eps3 = 1.0;

  const double k1_bound =
      (2.0 * eps3 / (2.0 * eps3 - 1.0)) *
      (c.jacobian_norm_bound + cpl / (2.0 * eps1) + (std::sqrt(n) + ml) / 2.0);
  const double k1 = margin * k1_bound;
  const double k4_bound = (std::sqrt(n) / 2.0 + n * ml / (2.0 * eps2) +
                           k1 * k1 * ml / 2.0) /
                          lambda;

  GainSet gs;
  gs.kind = StrategyKind::dist_observer;
  gs.k1 = k1;
  gs.k2 = 1.0;
  gs.k3 = 1.0;
  gs.k4 = margin * k4_bound;
  gs.eps = {{"eps1", eps1}, {"eps2", eps2}, {"eps3", eps3}};
  gs.margins = dist_observer_margins(k1, *gs.k4, eps1, eps2, eps3, c, lambda);
  gs.certified = all_positive(gs.margins);
  return gs;
}

GainSet synth_dist_filter_gains(const GameConstants& c,
                                const UndirectedGraph& g, double margin) {
  require_valid(c);
  if (margin <= 1.0) throw ValidationError("margin must exceed 1");
  if (g.size() != c.n_players)
    throw DimensionMismatch("graph size must equal the player count");
  const double lambda = require_positive_spectrum(g);
  const double cpl = cross_coupling(c);
  const double n = c.n_players;
  const double ml = c.max_lipschitz;

  const double k1_bound = cpl * cpl / (4.0 * c.monotonicity) +
                          c.jacobian_norm_bound;
  const double k1 = margin * k1_bound;
  const double k2 = margin * k1;

  const double lambda_a = symmetric_2x2_lambda_min(
      c.monotonicity, k1 - c.jacobian_norm_bound, -cpl / 2.0);
  if (lambda_a <= 0.0)
    throw Error("internal: lambda_min(A) <= 0 despite k1 above its bound");

  const double chi_num = 2.0 * k1 * ml + std::sqrt(n) + n * ml;
  const double k3_bound =
      chi_num * chi_num / (4.0 * std::min(lambda_a, k2 - k1) * lambda);

  GainSet gs;
  gs.kind = StrategyKind::dist_filter;
  gs.k1 = k1;
  gs.k2 = k2;
  gs.k3 = margin * k3_bound;
  gs.margins = dist_filter_margins(k1, k2, *gs.k3, c, lambda);
  gs.certified = all_positive(gs.margins);
  return gs;
}

namespace {

// Grid values used when a manual gain set carries no epsilon constants.
std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return v;
}

MarginReport best_observer_report(double k1, const GameConstants& c) {
  const double cpl = cross_coupling(c);
  const double eps1_hi = 2.0 * c.monotonicity / cpl;
  MarginReport best;
  best.certified = false;
  double best_min = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 49; ++i) {
    const double eps1 = eps1_hi * i / 50.0;
    for (double eps2 : log_grid(0.51, 64.0, 48)) {
      auto margins = observer_margins(k1, eps1, eps2, c);
      const double lo =
          std::min(margins[0].second, margins[1].second);
      if (lo > best_min) {
        best_min = lo;
        best.margins = std::move(margins);
        best.eps = {{"eps1", eps1}, {"eps2", eps2}};
      }
    }
  }
  best.certified = all_positive(best.margins);
  return best;
}

MarginReport best_filter_report(double k1, double k2,
                                const GameConstants& c) {
  const double cpl = cross_coupling(c);
  const double eps_lo = cpl / (2.0 * c.monotonicity);
  MarginReport best;
  double best_min = -std::numeric_limits<double>::infinity();
  for (double eps : log_grid(eps_lo * 1.001, eps_lo * 1024.0, 400)) {
    auto margins = filter_margins(k1, k2, eps, c);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& m : margins) lo = std::min(lo, m.second);
    if (lo > best_min) {
      best_min = lo;
      best.margins = std::move(margins);
      best.eps = {{"eps", eps}};
    }
  }
  best.certified = all_positive(best.margins);
  return best;
}

MarginReport best_dist_observer_report(double k1, double k4,
                                       const GameConstants& c,
                                       double lambda) {
  const double cpl = cross_coupling(c);
  const double n = c.n_players;
  const double ml = std::max(c.max_lipschitz, 1e-300);
  MarginReport best;
  double best_min = -std::numeric_limits<double>::infinity();
  // Split the monotonicity budget m between the two epsilon terms.
  for (int i = 1; i <= 30; ++i) {
    for (int j = 1; i + j <= 31; ++j) {
      const double eps1 = 2.0 * c.monotonicity * (i / 32.0) / cpl;
      const double eps2 = 2.0 * c.monotonicity * (j / 32.0) / (n * ml);
      for (double eps3 : log_grid(0.51, 64.0, 40)) {
        auto margins =
            dist_observer_margins(k1, k4, eps1, eps2, eps3, c, lambda);
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& m : margins) lo = std::min(lo, m.second);
        if (lo > best_min) {
          best_min = lo;
          best.margins = std::move(margins);
          best.eps = {{"eps1", eps1}, {"eps2", eps2}, {"eps3", eps3}};
        }
      }
    }
  }
  best.certified = all_positive(best.margins);
  return best;
}

}  // namespace

MarginReport validate_gains(StrategyKind kind, const GainSet& gains,
                            const GameConstants& c, const UndirectedGraph* g) {
  require_valid(c);
  double lambda = 0.0;
  if (kind == StrategyKind::dist_observer ||
      kind == StrategyKind::dist_filter) {
    if (g == nullptr)
      throw MissingGraph("distributed gain validation needs the graph");
    if (g->size() != c.n_players)
      throw DimensionMismatch("graph size must equal the player count");
    lambda = require_positive_spectrum(*g);
  }

  MarginReport report;
  switch (kind) {
    case StrategyKind::observer: {
      const double k1 = get_gain(gains.k1, "k1");
      get_gain(gains.k2, "k2");
      get_gain(gains.k3, "k3");
      const auto eps1 = find_eps(gains.eps, "eps1");
      const auto eps2 = find_eps(gains.eps, "eps2");
      if (eps1 && eps2) {
        report.margins = observer_margins(k1, *eps1, *eps2, c);
        report.eps = {{"eps1", *eps1}, {"eps2", *eps2}};
        report.certified = all_positive(report.margins);
      } else {
        report = best_observer_report(k1, c);
      }
      break;
    }
    case StrategyKind::filter: {
      const double k1 = get_gain(gains.k1, "k1");
      const double k2 = get_gain(gains.k2, "k2");
      if (const auto eps = find_eps(gains.eps, "eps")) {
        report.margins = filter_margins(k1, k2, *eps, c);
        report.eps = {{"eps", *eps}};
        report.certified = all_positive(report.margins);
      } else {
        report = best_filter_report(k1, k2, c);
      }
      break;
    }
    case StrategyKind::dist_observer: {
      const double k1 = get_gain(gains.k1, "k1");
      get_gain(gains.k2, "k2");
      get_gain(gains.k3, "k3");
      const double k4 = get_gain(gains.k4, "k4");
      const auto eps1 = find_eps(gains.eps, "eps1");
      const auto eps2 = find_eps(gains.eps, "eps2");
      const auto eps3 = find_eps(gains.eps, "eps3");
      if (eps1 && eps2 && eps3) {
        report.margins =
            dist_observer_margins(k1, k4, *eps1, *eps2, *eps3, c, lambda);
        report.eps = {{"eps1", *eps1}, {"eps2", *eps2}, {"eps3", *eps3}};
        report.certified = all_positive(report.margins);
      } else {
        report = best_dist_observer_report(k1, k4, c, lambda);
      }
      break;
    }
    case StrategyKind::dist_filter: {
      const double k1 = get_gain(gains.k1, "k1");
      const double k2 = get_gain(gains.k2, "k2");
      const double k3 = get_gain(gains.k3, "k3");
      report.margins = dist_filter_margins(k1, k2, k3, c, lambda);
      report.certified = all_positive(report.margins);
      break;
    }
  }
  return report;
}

Eigen::Matrix2d lyapunov_solve_2x2(double k2, double k3,
                                   const Eigen::Matrix2d& q) {
  if (k2 <= 0.0 || k3 <= 0.0)
    throw ValidationError("observer gains k2, k3 must be positive");
  if (std::abs(q(0, 1) - q(1, 0)) > 1e-12 * (1.0 + q.cwiseAbs().maxCoeff()))
    throw ValidationError("Q must be symmetric");
  const double det = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
  if (q(0, 0) <= 0.0 || det <= 0.0)
    throw ValidationError("Q must be positive definite");

  // With P = [[p11, p12], [p12, p22]] and F = [[-k2, 1], [-k3, 0]], the
  // equation P F + F' P = -Q reduces to three linear equations.
  const double p12 = -q(1, 1) / 2.0;
  const double p11 = (q(0, 0) - 2.0 * k3 * p12) / (2.0 * k2);
  const double p22 = (p11 - k2 * p12 + q(0, 1)) / k3;
  Eigen::Matrix2d p;
  p << p11, p12, p12, p22;
  return p;
}

}  // namespace nashseek
