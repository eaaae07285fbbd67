#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nashseek/errors.hpp"
#include "nashseek/gains.hpp"

using namespace nashseek;
namespace nt = nashseek::testing;

namespace {

double margin_value(const NamedValues& margins, const std::string& name) {
  for (const auto& [n, v] : margins)
    if (n == name) return v;
  FAIL("missing margin ", name);
  return 0.0;
}

// m=1, h=2, N=1, l=2 gives cross-coupling h sqrt(N) max_l + 1 = 5.
GameConstants toy1() { return nt::toy_constants(1.0, 2.0, 1, {2.0}); }

// m=1, h=2, N=2, l=sqrt(2) also gives coupling 5 but admits a two-node graph.
GameConstants toy2() {
  return nt::toy_constants(1.0, 2.0, 2, {std::sqrt(2.0), std::sqrt(2.0)});
}

}  // namespace

TEST_CASE("observer synthesis on toy constants") {
  // eps1 = half of 2m/5 = 0.2, eps2 = 1; k1 bound = (2*0.2*2 + 5)/0.2 = 29.
  const GainSet g = synth_observer_gains(toy1(), 1.1);
  CHECK(*g.k1 == doctest::Approx(31.9).epsilon(1e-12));
  CHECK(*g.k2 == doctest::Approx(1.0));
  CHECK(*g.k3 == doctest::Approx(1.0));
  CHECK(margin_value(g.eps, "eps1") == doctest::Approx(0.2));
  CHECK(margin_value(g.eps, "eps2") == doctest::Approx(1.0));
  // rho_pos = 1 - 5*0.2/2 = 0.5; rho_grad = 31.9 - 2 - 12.5 - 15.95 = 1.45.
  CHECK(margin_value(g.margins, "rho_pos") == doctest::Approx(0.5));
  CHECK(margin_value(g.margins, "rho_grad") ==
        doctest::Approx(1.45).epsilon(1e-12));
  CHECK(g.certified);

  const MarginReport rep = validate_gains(StrategyKind::observer, g, toy1());
  CHECK(rep.certified);
  CHECK(rep.min_margin() == doctest::Approx(g.min_margin()));
}

TEST_CASE("filter synthesis on toy constants") {
  // eps = 2 * 5/2 = 5; k1 bound = 2 + 5*5/2 = 14.5; k1 = 15.95, k2 = 17.545.
  const GainSet g = synth_filter_gains(toy1(), 1.1);
  CHECK(*g.k1 == doctest::Approx(15.95).epsilon(1e-12));
  CHECK(*g.k2 == doctest::Approx(17.545).epsilon(1e-12));
  CHECK(margin_value(g.eps, "eps") == doctest::Approx(5.0));
  CHECK(margin_value(g.margins, "rho_pos") == doctest::Approx(0.5));
  CHECK(margin_value(g.margins, "rho_grad") ==
        doctest::Approx(1.45).epsilon(1e-12));
  CHECK(margin_value(g.margins, "rho_filter") ==
        doctest::Approx(1.595).epsilon(1e-12));
  CHECK(g.min_margin() == doctest::Approx(0.5));
  CHECK(g.certified);
}

TEST_CASE("filter margins tighten as margin approaches 1") {
  const double m_tiny = synth_filter_gains(toy1(), 1.0 + 1e-6).min_margin();
  const double m_small = synth_filter_gains(toy1(), 1.0 + 1e-3).min_margin();
  const double m_norm = synth_filter_gains(toy1(), 1.1).min_margin();
  CHECK(m_tiny > 0.0);
  CHECK(m_tiny < m_small);
  CHECK(m_small < m_norm);
  CHECK(m_tiny < 1e-4);
  CHECK_THROWS_AS(synth_filter_gains(toy1(), 1.0), ValidationError);
}

TEST_CASE("distributed observer synthesis on the two-node graph") {
  // coupling = 2*sqrt(2)*2 + 1 for (m=1, h=2, N=2, l=2).
  const GameConstants c = nt::toy_constants(1.0, 2.0, 2, {2.0, 2.0});
  const auto g = nt::path_graph(2);
  const GainSet gs = synth_dist_observer_gains(c, g, 1.1);
  // Regression constants, first computed from the tuning-rule formulas with
  // lambda_min = (3 - sqrt 5)/2.
  CHECK(margin_value(gs.eps, "eps1") ==
        doctest::Approx(0.07511055241116742).epsilon(1e-12));
  CHECK(margin_value(gs.eps, "eps2") == doctest::Approx(0.125));
  CHECK(*gs.k1 == doctest::Approx(105.64579361637689).epsilon(1e-12));
  CHECK(*gs.k4 ==
        doctest::Approx(1.1 * 29263.70537271779).epsilon(1e-9));
  // Half the monotonicity budget is preserved: rho_pos = m/2.
  CHECK(margin_value(gs.margins, "rho_pos") == doctest::Approx(0.5));
  CHECK(gs.certified);

  const MarginReport rep =
      validate_gains(StrategyKind::dist_observer, gs, c, &g);
  CHECK(rep.certified);
}

TEST_CASE("distributed filter synthesis on toy constants") {
  // coupling = 5 again; k1 bound = 25/4 + 2 = 8.25.
  const GameConstants c = toy2();
  const auto g = nt::path_graph(2);
  const GainSet gs = synth_dist_filter_gains(c, g, 1.1);
  CHECK(*gs.k1 == doctest::Approx(9.075).epsilon(1e-12));
  CHECK(*gs.k2 == doctest::Approx(9.9825).epsilon(1e-12));
  // A = [[1, -2.5], [-2.5, 7.075]]: lambda_min = 4.0375 - sqrt(3.0375^2 +
  // 6.25) = 0.1034938...
  const double lambda_a = 4.0375 - std::hypot(3.0375, 2.5);
  CHECK(margin_value(gs.margins, "lambda_min_A") ==
        doctest::Approx(lambda_a).epsilon(1e-12));
  CHECK(lambda_a == doctest::Approx(0.1034938).epsilon(1e-5));
  CHECK(margin_value(gs.margins, "k2_minus_k1") ==
        doctest::Approx(0.9075).epsilon(1e-12));
  CHECK(margin_value(gs.margins, "lambda_min_A1") > 0.0);
  CHECK(gs.certified);
}

TEST_CASE("distributed filter determinant closes at the k1 bound") {
  const GameConstants c = toy2();
  const auto g = nt::path_graph(2);
  const double cpl = 5.0;
  const GainSet gs = synth_dist_filter_gains(c, g, 1.0 + 1e-12);
  const double det =
      c.monotonicity * (*gs.k1 - c.jacobian_norm_bound) - cpl * cpl / 4.0;
  CHECK(det > 0.0);
  CHECK(det < 1e-9);
}

TEST_CASE("synthesized sets stay certified across games and graphs") {
  std::mt19937_64 rng(101);
  const auto builtin = QuadraticGame::connectivity_five().constants();
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + int(rng() % 3);
    const GameConstants c =
        rep == 0 ? builtin : nt::random_monotone_game(n, rng).constants();
    const auto graph = nt::path_graph(c.n_players);
    for (const GainSet& gs :
         {synth_observer_gains(c, 1.1), synth_filter_gains(c, 1.1),
          synth_dist_observer_gains(c, graph, 1.1),
          synth_dist_filter_gains(c, graph, 1.1)}) {
      CHECK(gs.certified);
      CHECK(gs.min_margin() > 0.0);
      const MarginReport rep2 =
          validate_gains(gs.kind, gs, c, &graph);
      CHECK(rep2.certified);
    }
  }
}

TEST_CASE("margins never shrink when the synthesis margin grows") {
  std::mt19937_64 rng(103);
  const GameConstants c = nt::random_monotone_game(3, rng).constants();
  const auto graph = nt::path_graph(3);
  const double margins[] = {1.05, 1.1, 1.3, 1.7, 2.5};
  const auto check_monotone = [&](auto synth) {
    GainSet prev;
    bool first = true;
    for (double m : margins) {
      const GainSet cur = synth(m);
      if (!first) {
        REQUIRE(cur.margins.size() == prev.margins.size());
        for (std::size_t i = 0; i < cur.margins.size(); ++i)
          CHECK(cur.margins[i].second >= prev.margins[i].second - 1e-12);
      }
      prev = cur;
      first = false;
    }
  };
  check_monotone([&](double m) { return synth_observer_gains(c, m); });
  check_monotone([&](double m) { return synth_filter_gains(c, m); });
  check_monotone(
      [&](double m) { return synth_dist_observer_gains(c, graph, m); });
  check_monotone(
      [&](double m) { return synth_dist_filter_gains(c, graph, m); });
}

TEST_CASE("validation flags violated inequality directly") {
  const GameConstants c = toy1();
  GainSet manual = nt::manual_gains(StrategyKind::filter, 10.0, 8.0);
  const MarginReport rep = validate_gains(StrategyKind::filter, manual, c);
  CHECK_FALSE(rep.certified);
  CHECK(margin_value(rep.margins, "rho_filter") == doctest::Approx(-2.0));
}

TEST_CASE("modest manual gains for the builtin game are usable but "
          "uncertified") {
  const GameConstants c = QuadraticGame::connectivity_five().constants();
  GainSet manual = nt::manual_gains(StrategyKind::filter, 5.0, 10.0);
  const MarginReport rep = validate_gains(StrategyKind::filter, manual, c);
  CHECK_FALSE(rep.certified);
  // k1 = 5 is below the Jacobian bound, so the gradient margin is negative
  // for every eps.
  CHECK(margin_value(rep.margins, "rho_grad") < 0.0);
  CHECK(rep.margins.size() == 3);
}

TEST_CASE("grid-optimized eps certifies a certified k1") {
  const GameConstants c = toy1();
  GainSet g = synth_observer_gains(c, 1.5);
  g.eps.clear();  // force the grid search
  const MarginReport rep = validate_gains(StrategyKind::observer, g, c);
  CHECK(rep.certified);
  CHECK(rep.eps.size() == 2);
}

TEST_CASE("validation requires the graph for distributed kinds") {
  const GainSet g = nt::manual_gains(StrategyKind::dist_filter, 1, 2, 3);
  CHECK_THROWS_AS(validate_gains(StrategyKind::dist_filter, g, toy2()),
                  MissingGraph);
}

TEST_CASE("missing or non-positive gains are rejected") {
  const GameConstants c = toy1();
  GainSet g;
  g.kind = StrategyKind::filter;
  g.k1 = 1.0;
  CHECK_THROWS_AS(validate_gains(StrategyKind::filter, g, c),
                  ValidationError);
  g.k2 = -1.0;
  CHECK_THROWS_AS(validate_gains(StrategyKind::filter, g, c),
                  ValidationError);

  GameConstants bad = c;
  bad.monotonicity = 0.0;
  CHECK_THROWS_AS(synth_filter_gains(bad, 1.1), NotStronglyMonotone);
}

TEST_CASE("single-node graphs cannot back a distributed synthesis") {
  const GameConstants c = toy1();
  const UndirectedGraph g(1, {});
  CHECK_THROWS_AS(synth_dist_observer_gains(c, g, 1.1), ValidationError);
}

TEST_CASE("gains at 99 percent of their bound lose a margin") {
  const GameConstants c = QuadraticGame::connectivity_five().constants();
  const auto graph = nt::path_graph(5);

  GainSet obs = synth_observer_gains(c, 1.1);
  obs.k1 = *obs.k1 / 1.1 * 0.99;
  CHECK(validate_gains(StrategyKind::observer, obs, c).min_margin() <= 0.0);

  GainSet fil = synth_filter_gains(c, 1.1);
  GainSet fil_k1 = fil;
  fil_k1.k1 = *fil.k1 / 1.1 * 0.99;
  CHECK(validate_gains(StrategyKind::filter, fil_k1, c).min_margin() <= 0.0);
  GainSet fil_k2 = fil;
  fil_k2.k2 = 0.99 * *fil.k1;  // bound for k2 is k1
  CHECK(validate_gains(StrategyKind::filter, fil_k2, c).min_margin() <= 0.0);

  GainSet dob = synth_dist_observer_gains(c, graph, 1.1);
  GainSet dob_k4 = dob;
  dob_k4.k4 = *dob.k4 / 1.1 * 0.99;
  CHECK(validate_gains(StrategyKind::dist_observer, dob_k4, c, &graph)
            .min_margin() <= 0.0);

  GainSet dfl = synth_dist_filter_gains(c, graph, 1.1);
  GainSet dfl_k3 = dfl;
  dfl_k3.k3 = *dfl.k3 / 1.1 * 0.99;
  CHECK(validate_gains(StrategyKind::dist_filter, dfl_k3, c, &graph)
            .min_margin() <= 0.0);
}

TEST_CASE("observer error matrix is Hurwitz for synthesized gains") {
  const GainSet g = synth_observer_gains(toy1(), 1.1);
  // s^2 + k2 s + k3: both coefficients positive iff Hurwitz.
  CHECK(*g.k2 > 0.0);
  CHECK(*g.k3 > 0.0);
}

TEST_CASE("closed-form Lyapunov solve") {
  Eigen::Matrix2d q = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d p = lyapunov_solve_2x2(2.0, 1.0, q);
  Eigen::Matrix2d f;
  f << -2.0, 1.0, -1.0, 0.0;
  CHECK((p * f + f.transpose() * p + q).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(p(0, 1) == doctest::Approx(p(1, 0)));
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(p)
            .eigenvalues()
            .minCoeff() > 0.0);
}

TEST_CASE("Lyapunov solve properties on random inputs") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> pos(0.2, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double k2 = pos(rng), k3 = pos(rng);
    Eigen::Matrix2d a;
    a << pos(rng), pos(rng) * 0.3, 0.0, pos(rng);
    const Eigen::Matrix2d q = a * a.transpose() +
                              0.1 * Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d p = lyapunov_solve_2x2(k2, k3, q);
    Eigen::Matrix2d f;
    f << -k2, 1.0, -k3, 0.0;
    CHECK((p * f + f.transpose() * p + q).cwiseAbs().maxCoeff() <
          1e-12 * std::max(1.0, q.norm()));
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(p)
              .eigenvalues()
              .minCoeff() > 0.0);
    // Linearity in Q.
    const Eigen::Matrix2d p3 = lyapunov_solve_2x2(k2, k3, 3.0 * q);
    CHECK((p3 - 3.0 * p).cwiseAbs().maxCoeff() < 1e-10 * p.norm());
  }
}

TEST_CASE("Lyapunov solve validates its inputs") {
  Eigen::Matrix2d q = Eigen::Matrix2d::Identity();
  CHECK_THROWS_AS(lyapunov_solve_2x2(0.0, 1.0, q), ValidationError);
  Eigen::Matrix2d indef;
  indef << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(lyapunov_solve_2x2(1.0, 1.0, indef), ValidationError);
}
