#ifndef NASHSEEK_GAINS_HPP
#define NASHSEEK_GAINS_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nashseek/game.hpp"
#include "nashseek/graph.hpp"

namespace nashseek {

enum class StrategyKind { observer, filter, dist_observer, dist_filter };

std::string to_string(StrategyKind kind);
std::optional<StrategyKind> strategy_kind_from_string(const std::string& s);

using NamedValues = std::vector<std::pair<std::string, double>>;

/// Gains for one strategy plus the epsilon constants used to certify them and
/// the resulting stability margins. A set is certified when every margin is
/// strictly positive; uncertified sets may still be simulated.
struct GainSet {
  StrategyKind kind = StrategyKind::filter;
  std::optional<double> k1, k2, k3, k4;
  NamedValues eps;
  NamedValues margins;
  bool certified = false;

  double max_gain() const;
  double min_margin() const;  // +inf when no margins recorded
};

struct MarginReport {
  NamedValues margins;
  NamedValues eps;  // the values used (given or grid-optimized)
  bool certified = false;
  double min_margin() const;
};

/// Gain synthesis for each strategy. The tuning-rule inequalities are strict;
/// `margin` > 1 scales each bounded gain above its bound so the reported
/// margins are positive with floating-point headroom. Epsilon constants are
/// pinned deterministically inside their feasible intervals.
GainSet synth_observer_gains(const GameConstants& c, double margin = 1.1);
GainSet synth_filter_gains(const GameConstants& c, double margin = 1.1);
GainSet synth_dist_observer_gains(const GameConstants& c,
                                  const UndirectedGraph& g,
                                  double margin = 1.1);
GainSet synth_dist_filter_gains(const GameConstants& c,
                                const UndirectedGraph& g, double margin = 1.1);

/// Re-evaluates the certification inequalities on an arbitrary gain set. When
/// the set carries no epsilon constants they are optimized on a grid. A
/// report with any non-positive margin is uncertified but still usable for
/// simulation. Distributed kinds require the graph.
MarginReport validate_gains(StrategyKind kind, const GainSet& gains,
                            const GameConstants& c,
                            const UndirectedGraph* g = nullptr);

/// Unique symmetric positive definite P with P F + F' P = -Q for the observer
/// error matrix F = [[-k2, 1], [-k3, 0]], solved in closed form.
Eigen::Matrix2d lyapunov_solve_2x2(double k2, double k3,
                                   const Eigen::Matrix2d& q);

}  // namespace nashseek

#endif  // NASHSEEK_GAINS_HPP
