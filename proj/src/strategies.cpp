#include "nashseek/strategies.hpp"

#include <string>

#include "nashseek/errors.hpp"

namespace nashseek {

namespace {

double gain(const std::optional<double>& k, const char* name) {
  if (!k || *k <= 0.0)
    throw ValidationError(std::string("strategy needs positive gain ") + name);
  return *k;
}

StateLayout make_layout(StrategyKind kind, const QuadraticGame& game) {
  StateLayout lay;
  lay.kind = kind;
  lay.n_players = game.n_players();
  lay.dim = game.dim();
  lay.action_dims = game.action_dims();
  return lay;
}

// dz cell (i, j) = -kc (sum_k a_ik (z_ij - z_kj) + a_ij (z_ij - x_j)).
// Each player's update reads only neighbor estimates and neighbor positions.
void consensus_rhs(const QuadraticGame& game, const UndirectedGraph& graph,
                   double kc, Eigen::Ref<const Eigen::VectorXd> x,
                   Eigen::Ref<const Eigen::VectorXd> z,
                   Eigen::Ref<Eigen::VectorXd> dz) {
  const int n = game.n_players();
  const int dim = game.dim();
  for (int i = 0; i < n; ++i) {
    const auto& nbrs = graph.neighbors(i);
    for (int j = 0; j < n; ++j) {
      const int off = game.block_offset(j);
      const int d = game.block_dim(j);
      const auto cell = z.segment(i * dim + off, d);
      Eigen::VectorXd acc = double(nbrs.size()) * cell;
      for (int k : nbrs) acc -= z.segment(k * dim + off, d);
      if (graph.has_edge(i, j)) acc += cell - x.segment(off, d);
      dz.segment(i * dim + off, d) = -kc * acc;
    }
  }
}

}  // namespace

Strategy::Strategy(StrategyKind kind, QuadraticGame game, GainSet gains,
                   std::optional<UndirectedGraph> graph)
    : game_(std::move(game)), gains_(std::move(gains)), graph_(std::move(graph)) {
  layout_ = make_layout(kind, game_);
  if (layout_.distributed()) {
    if (!graph_)
      throw MissingGraph("strategy " + to_string(kind) +
                         " needs a communication graph");
    if (graph_->size() != game_.n_players())
      throw DimensionMismatch("graph size must equal the player count");
  }
  // Fail fast on missing gains rather than on the first rhs() call.
  gain(gains_.k1, "k1");
  gain(gains_.k2, "k2");
  if (layout_.has_observer()) gain(gains_.k3, "k3");
  if (kind == StrategyKind::dist_observer) gain(gains_.k4, "k4");
  if (kind == StrategyKind::dist_filter) gain(gains_.k3, "k3");
}

void Strategy::check_state(const Eigen::VectorXd& s) const {
  if (s.size() != layout_.size())
    throw DimensionMismatch("state has length " + std::to_string(s.size()) +
                            ", expected " + std::to_string(layout_.size()));
}

Eigen::VectorXd Strategy::init_state(const Eigen::VectorXd& x0,
                                     const StateOverrides& overrides) const {
  if (x0.size() != layout_.dim)
    throw DimensionMismatch("x0 must have the game dimension");
  Eigen::VectorXd s = Eigen::VectorXd::Zero(layout_.size());
  s.segment(layout_.x_offset(), layout_.dim) = x0;

  const auto put = [&](const std::optional<Eigen::VectorXd>& v, int off,
                       int len, const char* name) {
    if (!v) return;
    if (v->size() != len)
      throw DimensionMismatch(std::string("override ") + name +
                              " has the wrong length");
    s.segment(off, len) = *v;
  };
  put(overrides.v, layout_.v_offset(), layout_.dim, "v");
  if (layout_.has_observer()) {
    put(overrides.xbar, layout_.xbar_offset(), layout_.dim, "xbar");
    put(overrides.vbar, layout_.vbar_offset(), layout_.dim, "vbar");
    if (overrides.xhat)
      throw WrongStrategyKind("xhat override on an observer strategy");
  } else {
    put(overrides.xhat, layout_.xhat_offset(), layout_.dim, "xhat");
    if (overrides.xbar || overrides.vbar)
      throw WrongStrategyKind("observer overrides on a filter strategy");
  }
  if (layout_.distributed()) {
    put(overrides.z, layout_.z_offset(), layout_.z_size(), "z");
  } else if (overrides.z) {
    throw WrongStrategyKind("z override on a centralized strategy");
  }
  return s;
}

void Strategy::rhs(double /*t*/, const Eigen::VectorXd& s,
                   Eigen::VectorXd& ds) const {
  switch (layout_.kind) {
    case StrategyKind::observer:
      observer_rhs(game_, gains_, s, ds);
      return;
    case StrategyKind::filter:
      filter_rhs(game_, gains_, s, ds);
      return;
    case StrategyKind::dist_observer:
      dist_observer_rhs(game_, *graph_, gains_, s, ds);
      return;
    case StrategyKind::dist_filter:
      dist_filter_rhs(game_, *graph_, gains_, s, ds);
      return;
  }
}

Eigen::VectorXd Strategy::control(const Eigen::VectorXd& s) const {
  check_state(s);
  const int dim = layout_.dim;
  const double k1 = *gains_.k1;
  const Eigen::VectorXd x = s.segment(0, dim);
  Eigen::VectorXd grad;
  if (layout_.distributed())
    grad = game_.pseudo_gradient_at_estimates(
        s.segment(layout_.z_offset(), layout_.z_size()));
  else
    grad = game_.pseudo_gradient(x);
  if (layout_.has_observer())
    return -k1 * grad - k1 * s.segment(layout_.vbar_offset(), dim);
  const Eigen::VectorXd y =
      -s.segment(layout_.xhat_offset(), dim) + (*gains_.k2) * x;
  return -k1 * grad - k1 * y;
}

Eigen::VectorXd Strategy::velocity_estimate(const Eigen::VectorXd& s) const {
  check_state(s);
  const int dim = layout_.dim;
  if (layout_.has_observer()) return s.segment(layout_.vbar_offset(), dim);
  return -s.segment(layout_.xhat_offset(), dim) +
         (*gains_.k2) * s.segment(0, dim);
}

Eigen::VectorXd Strategy::observation_error(const Eigen::VectorXd& s) const {
  check_state(s);
  if (!layout_.has_observer())
    throw WrongStrategyKind("observation error is defined for observer kinds");
  const int dim = layout_.dim;
  Eigen::VectorXd err(2 * dim);
  err.head(dim) =
      s.segment(layout_.xbar_offset(), dim) - s.segment(0, dim);
  err.tail(dim) =
      s.segment(layout_.vbar_offset(), dim) - s.segment(dim, dim);
  return err;
}

Eigen::VectorXd Strategy::consensus_residual(const Eigen::VectorXd& s) const {
  check_state(s);
  if (!layout_.distributed())
    throw WrongStrategyKind(
        "consensus residual is defined for distributed kinds");
  const int dim = layout_.dim;
  Eigen::VectorXd res = s.segment(layout_.z_offset(), layout_.z_size());
  for (int i = 0; i < layout_.n_players; ++i)
    res.segment(i * dim, dim) -= s.segment(0, dim);
  return res;
}

void observer_rhs(const QuadraticGame& game, const GainSet& gains,
                  const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
  const int dim = game.dim();
  if (s.size() != 4 * dim)
    throw DimensionMismatch("observer state must have length 4D");
  ds.resize(4 * dim);
  const double k1 = gain(gains.k1, "k1");
  const double k2 = gain(gains.k2, "k2");
  const double k3 = gain(gains.k3, "k3");

  const auto x = s.segment(0, dim);
  const auto v = s.segment(dim, dim);
  const auto xbar = s.segment(2 * dim, dim);
  const auto vbar = s.segment(3 * dim, dim);

  const Eigen::VectorXd u = -k1 * game.pseudo_gradient(x) - k1 * vbar;
  ds.segment(0, dim) = v;
  ds.segment(dim, dim) = u;
  ds.segment(2 * dim, dim) = -k2 * (xbar - x) + vbar;
  ds.segment(3 * dim, dim) = -k3 * (xbar - x) + u;  // same u as applied
}

void filter_rhs(const QuadraticGame& game, const GainSet& gains,
                const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
  const int dim = game.dim();
  if (s.size() != 3 * dim)
    throw DimensionMismatch("filter state must have length 3D");
  ds.resize(3 * dim);
  const double k1 = gain(gains.k1, "k1");
  const double k2 = gain(gains.k2, "k2");

  const auto x = s.segment(0, dim);
  const auto v = s.segment(dim, dim);
  const auto xhat = s.segment(2 * dim, dim);

  const Eigen::VectorXd y = -xhat + k2 * x;  // derived, never integrated
  ds.segment(0, dim) = v;
  ds.segment(dim, dim) = -k1 * game.pseudo_gradient(x) - k1 * y;
  ds.segment(2 * dim, dim) = -k2 * xhat + k2 * k2 * x;
}

void dist_observer_rhs(const QuadraticGame& game, const UndirectedGraph& graph,
                       const GainSet& gains, const Eigen::VectorXd& s,
                       Eigen::VectorXd& ds) {
  const int dim = game.dim();
  const int n = game.n_players();
  if (graph.size() != n)
    throw DimensionMismatch("graph size must equal the player count");
  if (s.size() != 4 * dim + n * dim)
    throw DimensionMismatch("distributed observer state must have length "
                            "4D + N*D");
  ds.resize(s.size());
  const double k1 = gain(gains.k1, "k1");
  const double k2 = gain(gains.k2, "k2");
  const double k3 = gain(gains.k3, "k3");
  const double k4 = gain(gains.k4, "k4");

  const auto x = s.segment(0, dim);
  const auto v = s.segment(dim, dim);
  const auto xbar = s.segment(2 * dim, dim);
  const auto vbar = s.segment(3 * dim, dim);
  const auto z = s.segment(4 * dim, n * dim);

  // Gradient blocks are evaluated at each player's own profile estimate.
  const Eigen::VectorXd u =
      -k1 * game.pseudo_gradient_at_estimates(z) - k1 * vbar;
  ds.segment(0, dim) = v;
  ds.segment(dim, dim) = u;
  ds.segment(2 * dim, dim) = -k2 * (xbar - x) + vbar;
  ds.segment(3 * dim, dim) = -k3 * (xbar - x) + u;
  consensus_rhs(game, graph, k4, x, z, ds.segment(4 * dim, n * dim));
}

void dist_filter_rhs(const QuadraticGame& game, const UndirectedGraph& graph,
                     const GainSet& gains, const Eigen::VectorXd& s,
                     Eigen::VectorXd& ds) {
  const int dim = game.dim();
  const int n = game.n_players();
  if (graph.size() != n)
    throw DimensionMismatch("graph size must equal the player count");
  if (s.size() != 3 * dim + n * dim)
    throw DimensionMismatch("distributed filter state must have length "
                            "3D + N*D");
  ds.resize(s.size());
  const double k1 = gain(gains.k1, "k1");
  const double k2 = gain(gains.k2, "k2");
  const double k3 = gain(gains.k3, "k3");  // consensus gain for this kind

  const auto x = s.segment(0, dim);
  const auto v = s.segment(dim, dim);
  const auto xhat = s.segment(2 * dim, dim);
  const auto z = s.segment(3 * dim, n * dim);

  const Eigen::VectorXd y = -xhat + k2 * x;
  ds.segment(0, dim) = v;
  ds.segment(dim, dim) = -k1 * game.pseudo_gradient_at_estimates(z) - k1 * y;
  ds.segment(2 * dim, dim) = -k2 * xhat + k2 * k2 * x;
  consensus_rhs(game, graph, k3, x, z, ds.segment(3 * dim, n * dim));
}

}  // namespace nashseek
