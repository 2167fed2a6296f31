#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "feg/errors.hpp"
#include "feg/tree_eval.hpp"
#include "test_support.hpp"

using namespace feg;

namespace {

Prior uniform_prior(Eigen::Index n) { return Prior(normalize(Eigen::VectorXd::Ones(n))); }

/// Random tree of depth at most `depth_budget` with leaves in [0, 1] and
/// priors bounded away from zero (so extreme-beta error bounds stay tight).
TreeNode random_tree(std::mt19937& rng, int depth_budget, const std::vector<double>& betas) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (depth_budget == 0 || unit(rng) < 0.25) return TreeNode::leaf(unit(rng));
  std::uniform_int_distribution<int> fan_dist(2, 3);
  const int fan = fan_dist(rng);
  std::vector<TreeNode> children;
  for (int i = 0; i < fan; ++i) children.push_back(random_tree(rng, depth_budget - 1, betas));
  std::uniform_int_distribution<size_t> beta_pick(0, betas.size() - 1);
  return TreeNode::internal(betas[beta_pick(rng)],
                            test::random_full_support_prior(rng, fan, 0.15),
                            std::move(children));
}

/// Depth-2 rectangular tree: `n` internal children with `m` leaf
/// grandchildren each.
TreeNode rectangular_tree(std::mt19937& rng, int n, int m, double root_beta,
                          double child_beta) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TreeNode> rows;
  for (int x = 0; x < n; ++x) {
    std::vector<TreeNode> leaves;
    for (int y = 0; y < m; ++y) leaves.push_back(TreeNode::leaf(unit(rng)));
    rows.push_back(TreeNode::internal(child_beta, test::random_full_support_prior(rng, m, 0.15),
                                      std::move(leaves)));
  }
  return TreeNode::internal(root_beta, test::random_full_support_prior(rng, n, 0.15),
                            std::move(rows));
}

/// Rebuilds the tree with `delta` added to the beta of the `target`-th
/// internal node in preorder.
TreeNode bump_beta(const TreeNode& t, int& counter, int target, double delta) {
  if (t.is_leaf()) return TreeNode::leaf(t.utility());
  const int id = counter++;
  std::vector<TreeNode> children;
  for (const TreeNode& c : t.children()) children.push_back(bump_beta(c, counter, target, delta));
  return TreeNode::internal(t.beta() + (id == target ? delta : 0.0), t.prior(),
                            std::move(children));
}

int internal_count(const TreeNode& t) {
  if (t.is_leaf()) return 0;
  int c = 1;
  for (const TreeNode& child : t.children()) c += internal_count(child);
  return c;
}

}  // namespace

TEST_CASE("node construction and accessors") {
  TreeNode leaf = TreeNode::leaf(3.5);
  CHECK(leaf.is_leaf());
  CHECK(leaf.utility() == 3.5);
  CHECK(leaf.depth() == 0);
  CHECK_THROWS_AS(leaf.beta(), UnsupportedShape);
  CHECK_THROWS_AS(leaf.prior(), UnsupportedShape);
  CHECK_THROWS_AS(TreeNode::leaf(std::nan("")), InvalidUtility);

  std::vector<TreeNode> kids;
  kids.push_back(TreeNode::leaf(1.0));
  kids.push_back(TreeNode::leaf(0.0));
  TreeNode node = TreeNode::internal(2.0, uniform_prior(2), std::move(kids));
  CHECK(!node.is_leaf());
  CHECK(node.beta() == 2.0);
  CHECK(node.depth() == 1);
  CHECK_THROWS_AS(node.utility(), UnsupportedShape);

  CHECK_THROWS_AS(TreeNode::internal(1.0, uniform_prior(2), {}), UnsupportedShape);
  std::vector<TreeNode> one;
  one.push_back(TreeNode::leaf(0.0));
  CHECK_THROWS_AS(TreeNode::internal(1.0, uniform_prior(2), std::move(one)), DimensionMismatch);
  std::vector<TreeNode> two;
  two.push_back(TreeNode::leaf(0.0));
  two.push_back(TreeNode::leaf(1.0));
  CHECK_THROWS_AS(
      TreeNode::internal(std::numeric_limits<double>::infinity(), uniform_prior(2), std::move(two)),
      InvalidBeta);
}

TEST_CASE("evaluation of leaves and single nodes") {
  CHECK(evaluate(TreeNode::leaf(3.0)) == 3.0);

  std::vector<TreeNode> kids;
  kids.push_back(TreeNode::leaf(1.0));
  kids.push_back(TreeNode::leaf(0.0));
  TreeNode node = TreeNode::internal(1.0, uniform_prior(2), std::move(kids));
  // A single internal node is the plain certainty equivalent.
  CHECK(evaluate(node) == doctest::Approx(0.6201145069582775).epsilon(1e-14));
}

TEST_CASE("extreme beta approximates min, max and expectation") {
  std::vector<TreeNode> kids;
  kids.push_back(TreeNode::leaf(1.0));
  kids.push_back(TreeNode::leaf(0.0));
  TreeNode max_node = TreeNode::internal(kExtremeBeta, uniform_prior(2), kids);
  CHECK(std::abs(evaluate(max_node) - 1.0) <= 1e-5);
  TreeNode min_node = TreeNode::internal(-kExtremeBeta, uniform_prior(2), kids);
  CHECK(std::abs(evaluate(min_node) - 0.0) <= 1e-5);
  TreeNode mean_node = TreeNode::internal(0.0, uniform_prior(2), kids);
  CHECK(evaluate(mean_node) == 0.5);
}

TEST_CASE("zero-prior children are outside both evaluations") {
  std::vector<TreeNode> kids;
  kids.push_back(TreeNode::leaf(0.0));
  kids.push_back(TreeNode::leaf(5.0));
  Eigen::VectorXd w(2);
  w << 0.0, 1.0;
  TreeNode node = TreeNode::internal(-kExtremeBeta, Prior(Policy(w)), kids);
  CHECK(evaluate_limit(node) == 5.0);
  CHECK(std::abs(evaluate(node) - 5.0) <= 1e-9);
}

TEST_CASE("a minimax tree evaluates to the induced game's pessimistic value") {
  // Agent maximizes over two rows whose worst cases are 1 and 2.
  std::vector<TreeNode> row1, row2;
  row1.push_back(TreeNode::leaf(3.0));
  row1.push_back(TreeNode::leaf(1.0));
  row2.push_back(TreeNode::leaf(2.0));
  row2.push_back(TreeNode::leaf(2.0));
  std::vector<TreeNode> rows;
  rows.push_back(TreeNode::internal(-kExtremeBeta, uniform_prior(2), std::move(row1)));
  rows.push_back(TreeNode::internal(-kExtremeBeta, uniform_prior(2), std::move(row2)));
  TreeNode tree = TreeNode::internal(kExtremeBeta, uniform_prior(2), std::move(rows));

  CHECK(evaluate_limit(tree) == 2.0);
  CHECK(std::abs(evaluate(tree) - 2.0) <= 1e-5);

  MatrixGame game = flatten(tree);
  auto [policy, value] = minmax_rule(game);
  CHECK(value == 2.0);
  CHECK(std::abs(evaluate(tree) - value) <= 1e-5);
}

TEST_CASE("flatten exposes matrix, channel and labels") {
  std::mt19937 rng(103);
  TreeNode tree = rectangular_tree(rng, 2, 3, 1.0, -1.0);
  MatrixGame game = flatten(tree);
  CHECK(game.num_actions() == 2);
  CHECK(game.num_observations() == 3);
  CHECK(game.actions()[0] == "x1");
  CHECK(game.actions()[1] == "x2");
  CHECK(game.observations()[2] == "y3");
  for (Eigen::Index x = 0; x < 2; ++x) {
    const TreeNode& row = tree.children()[static_cast<size_t>(x)];
    for (Eigen::Index y = 0; y < 3; ++y) {
      CHECK(game.utility_matrix()(x, y) ==
            row.children()[static_cast<size_t>(y)].utility());
      CHECK(game.channel()(x, y) == row.prior()[y]);
    }
  }
}

TEST_CASE("flatten rejects non depth-2 shapes") {
  CHECK_THROWS_AS(flatten(TreeNode::leaf(1.0)), UnsupportedShape);

  std::vector<TreeNode> kids;
  kids.push_back(TreeNode::leaf(1.0));
  kids.push_back(TreeNode::leaf(0.0));
  TreeNode depth1 = TreeNode::internal(1.0, uniform_prior(2), std::move(kids));
  CHECK_THROWS_AS(flatten(depth1), UnsupportedShape);

  std::mt19937 rng(107);
  TreeNode depth2 = rectangular_tree(rng, 2, 2, 1.0, 1.0);
  std::vector<TreeNode> deep_rows;
  deep_rows.push_back(depth2);
  deep_rows.push_back(depth2);
  TreeNode depth3 = TreeNode::internal(1.0, uniform_prior(2), std::move(deep_rows));
  CHECK_THROWS_AS(flatten(depth3), UnsupportedShape);

  // Ragged fan-out.
  std::vector<TreeNode> r1, r2;
  r1.push_back(TreeNode::leaf(0.0));
  r1.push_back(TreeNode::leaf(1.0));
  r2.push_back(TreeNode::leaf(0.5));
  std::vector<TreeNode> ragged_rows;
  ragged_rows.push_back(TreeNode::internal(1.0, uniform_prior(2), std::move(r1)));
  ragged_rows.push_back(TreeNode::internal(1.0, uniform_prior(1), std::move(r2)));
  TreeNode ragged = TreeNode::internal(1.0, uniform_prior(2), std::move(ragged_rows));
  CHECK_THROWS_AS(flatten(ragged), UnsupportedShape);

  // A leaf among internal children at depth 2.
  std::vector<TreeNode> m1;
  m1.push_back(TreeNode::leaf(0.0));
  m1.push_back(TreeNode::leaf(1.0));
  std::vector<TreeNode> mixed_rows;
  mixed_rows.push_back(TreeNode::internal(1.0, uniform_prior(2), std::move(m1)));
  mixed_rows.push_back(TreeNode::leaf(0.25));
  TreeNode mixed = TreeNode::internal(1.0, uniform_prior(2), std::move(mixed_rows));
  CHECK_THROWS_AS(flatten(mixed), UnsupportedShape);
}

TEST_CASE("extreme-beta evaluation agrees with the exact limit recursion") {
  std::mt19937 rng(109);
  const std::vector<double> betas = {-kExtremeBeta, 0.0, kExtremeBeta};
  for (int trial = 0; trial < 60; ++trial) {
    TreeNode tree = random_tree(rng, 3, betas);
    CHECK(std::abs(evaluate(tree) - evaluate_limit(tree)) <= 1e-5);
  }
}

TEST_CASE("expectation-only trees match the flattened expected utility") {
  std::mt19937 rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    TreeNode tree = rectangular_tree(rng, 3, 2, 0.0, 0.0);
    MatrixGame game = flatten(tree);
    double direct = evaluate(tree);
    double via_game = expected_utility(game, tree.prior().as_policy());
    CHECK(direct == doctest::Approx(via_game).epsilon(1e-12));
  }
}

TEST_CASE("raising any node's beta never lowers the tree value") {
  std::mt19937 rng(127);
  const std::vector<double> betas = {-2.0, -0.5, 0.0, 1.0, 3.0};
  for (int trial = 0; trial < 25; ++trial) {
    TreeNode tree = random_tree(rng, 3, betas);
    const double base = evaluate(tree);
    const int internals = internal_count(tree);
    for (int target = 0; target < internals; ++target) {
      int counter = 0;
      TreeNode bumped = bump_beta(tree, counter, target, 0.8);
      CHECK(evaluate(bumped) >= base - 1e-12);
    }
  }
}

TEST_CASE("shifting every leaf shifts the value by the same amount") {
  std::mt19937 rng(131);
  const std::vector<double> betas = {-1.5, 0.0, 2.0};
  auto shift_leaves = [](auto&& self, const TreeNode& t, double delta) -> TreeNode {
    if (t.is_leaf()) return TreeNode::leaf(t.utility() + delta);
    std::vector<TreeNode> kids;
    for (const TreeNode& c : t.children()) kids.push_back(self(self, c, delta));
    return TreeNode::internal(t.beta(), t.prior(), std::move(kids));
  };
  for (int trial = 0; trial < 20; ++trial) {
    TreeNode tree = random_tree(rng, 3, betas);
    TreeNode moved = shift_leaves(shift_leaves, tree, 2.5);
    CHECK(evaluate(moved) == doctest::Approx(evaluate(tree) + 2.5).epsilon(1e-11));
  }
}
