#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "feg/errors.hpp"
#include "feg/expected_utility.hpp"
#include "test_support.hpp"

using namespace feg;

namespace {

MatrixGame example_game() {
  Eigen::MatrixXd u(2, 2);
  u << 3.0, 1.0, 2.0, 2.0;
  Eigen::MatrixXd q(2, 2);
  q << 0.5, 0.5, 0.5, 0.5;
  return MatrixGame({"x1", "x2"}, {"y1", "y2"}, u, q);
}

MatrixGame random_game(std::mt19937& rng, Eigen::Index n, Eigen::Index m) {
  Eigen::MatrixXd u(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    u.row(i) = test::random_vector(rng, m, -2.0, 2.0).transpose();
  Eigen::MatrixXd q(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    q.row(i) = test::random_full_support_policy(rng, m, 0.05).weights().transpose();
  std::vector<std::string> rows, cols;
  for (Eigen::Index i = 0; i < n; ++i) rows.push_back("x" + std::to_string(i + 1));
  for (Eigen::Index j = 0; j < m; ++j) cols.push_back("y" + std::to_string(j + 1));
  return MatrixGame(rows, cols, u, q);
}

}  // namespace

TEST_CASE("matrix game construction validates shapes and entries") {
  Eigen::MatrixXd u(2, 2);
  u << 1.0, 2.0, 3.0, 4.0;
  CHECK_THROWS_AS(MatrixGame({"x1"}, {"y1", "y2"}, u), DimensionMismatch);
  CHECK_THROWS_AS(MatrixGame({"x1", "x2"}, {"y1"}, u), DimensionMismatch);

  Eigen::MatrixXd bad = u;
  bad(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(MatrixGame({"x1", "x2"}, {"y1", "y2"}, bad), InvalidUtility);

  Eigen::MatrixXd q(2, 2);
  q << 0.9, 0.2, 0.5, 0.5;  // first row sums to 1.1
  CHECK_THROWS_AS(MatrixGame({"x1", "x2"}, {"y1", "y2"}, u, q), InvalidDistribution);

  Eigen::MatrixXd q3(3, 2);
  q3.setConstant(0.5);
  CHECK_THROWS_AS(MatrixGame({"x1", "x2"}, {"y1", "y2"}, u, q3), DimensionMismatch);
}

TEST_CASE("expected_utility averages over policy and channel") {
  MatrixGame game = example_game();
  Policy uniform = normalize(Eigen::VectorXd::Ones(2));
  CHECK(expected_utility(game, uniform) == doctest::Approx(2.0).epsilon(1e-14));

  Eigen::VectorXd top(2);
  top << 1.0, 0.0;
  CHECK(expected_utility(game, Policy(top)) == doctest::Approx(2.0).epsilon(1e-14));

  Eigen::MatrixXd u(2, 2);
  u << 3.0, 1.0, 2.0, 2.0;
  MatrixGame bare({"x1", "x2"}, {"y1", "y2"}, u);
  CHECK_THROWS_AS(expected_utility(bare, uniform), ChannelRequired);

  Eigen::VectorXd w3 = Eigen::VectorXd::Ones(3) / 3.0;
  CHECK_THROWS_AS(expected_utility(game, Policy(w3)), DimensionMismatch);
}

TEST_CASE("expected_utility is linear in the policy") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    MatrixGame game = random_game(rng, 4, 3);
    Policy p = test::random_full_support_policy(rng, 4);
    Policy q = test::random_full_support_policy(rng, 4);
    double lambda = 0.3;
    Policy mix = normalize(lambda * p.weights() + (1.0 - lambda) * q.weights());
    double lhs = expected_utility(game, mix);
    double rhs = lambda * expected_utility(game, p) + (1.0 - lambda) * expected_utility(game, q);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("argmax_policy returns the lowest-index maximizing vertex") {
  Eigen::VectorXd v(2);
  v << 1.0, 3.0;
  Policy p = argmax_policy(v);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 1.0);

  Eigen::VectorXd tie(3);
  tie << 2.0, 2.0, 1.0;
  Policy t = argmax_policy(tie);
  CHECK(t[0] == 1.0);
  CHECK(t[1] == 0.0);
  CHECK(t[2] == 0.0);

  Eigen::VectorXd bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(argmax_policy(bad), InvalidUtility);
  CHECK_THROWS_AS(argmax_policy(Eigen::VectorXd(0)), InvalidUtility);
}

TEST_CASE("deterministic commitment is optimal among all policies") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixGame game = random_game(rng, 3, 4);
    Eigen::VectorXd cond = (game.utility_matrix().array() * game.channel().array())
                               .rowwise()
                               .sum();
    double best = expected_utility(game, argmax_policy(cond));
    for (const Policy& p : grid_policies(3, 0.1))
      CHECK(expected_utility(game, p) <= best + 1e-12);
  }
}

TEST_CASE("utility_distribution lists increasing atoms with unit mass") {
  MatrixGame game = example_game();
  Policy uniform = normalize(Eigen::VectorXd::Ones(2));
  UtilityDistribution d = utility_distribution(game, uniform);
  REQUIRE(d.support.size() == 3);
  CHECK(d.support[0] == doctest::Approx(1.0));
  CHECK(d.support[1] == doctest::Approx(2.0));
  CHECK(d.support[2] == doctest::Approx(3.0));
  CHECK(d.masses[0] == doctest::Approx(0.25));
  CHECK(d.masses[1] == doctest::Approx(0.5));
  CHECK(d.masses[2] == doctest::Approx(0.25));
  CHECK(d.mean() == doctest::Approx(expected_utility(game, uniform)).epsilon(1e-13));
}

TEST_CASE("utility_distribution merges outcomes closer than the gap tolerance") {
  Eigen::MatrixXd u(1, 3);
  u << 1.0, 1.0 + 5e-13, 2.0;
  Eigen::MatrixXd q(1, 3);
  q << 0.25, 0.25, 0.5;
  MatrixGame game({"x1"}, {"y1", "y2", "y3"}, u, q);
  Eigen::VectorXd w(1);
  w << 1.0;
  UtilityDistribution d = utility_distribution(game, Policy(w));
  REQUIRE(d.support.size() == 2);
  CHECK(d.masses[0] == doctest::Approx(0.5));
  CHECK(d.masses[1] == doctest::Approx(0.5));
  CHECK(d.support[0] == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("utility_distribution properties on random games") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    MatrixGame game = random_game(rng, 3, 5);
    Policy p = test::random_full_support_policy(rng, 3);
    UtilityDistribution d = utility_distribution(game, p);
    double mass = 0.0;
    for (size_t k = 0; k < d.masses.size(); ++k) {
      mass += d.masses[k];
      if (k > 0) CHECK(d.support[k] > d.support[k - 1]);
      CHECK(d.masses[k] > 0.0);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.mean() == doctest::Approx(expected_utility(game, p)).epsilon(1e-11));
  }
}

TEST_CASE("minmax_rule maximizes the per-action worst case") {
  MatrixGame game = example_game();
  auto [policy, value] = minmax_rule(game);
  CHECK(value == 2.0);
  CHECK(policy[1] == 1.0);

  Eigen::MatrixXd u(2, 2);
  u << 1.0, -1.0, -1.0, 1.0;
  MatrixGame sym({"x1", "x2"}, {"y1", "y2"}, u);
  auto [p2, v2] = minmax_rule(sym);
  CHECK(v2 == -1.0);
  CHECK(p2[0] == 1.0);  // tie broken at the lowest index
}

TEST_CASE("maxmax_rule maximizes the per-action best case") {
  MatrixGame game = example_game();
  auto [policy, value] = maxmax_rule(game);
  CHECK(value == 3.0);
  CHECK(policy[0] == 1.0);

  Eigen::MatrixXd u(1, 1);
  u << -4.5;
  MatrixGame single({"x1"}, {"y1"}, u);
  CHECK(minmax_rule(single).second == -4.5);
  CHECK(maxmax_rule(single).second == -4.5);
}

TEST_CASE("expected utility under any channel sits between the extremal rules") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    MatrixGame game = random_game(rng, 4, 3);
    double lo = minmax_rule(game).second;
    double hi = maxmax_rule(game).second;
    Eigen::VectorXd cond = (game.utility_matrix().array() * game.channel().array())
                               .rowwise()
                               .sum();
    double mid = expected_utility(game, argmax_policy(cond));
    CHECK(lo <= mid + 1e-12);
    CHECK(mid <= hi + 1e-12);
  }
}
