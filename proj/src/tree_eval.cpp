#include "feg/tree_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace feg {

TreeNode TreeNode::leaf(double utility) {
  if (!std::isfinite(utility)) throw InvalidUtility("TreeNode: leaf utility must be finite");
  TreeNode node;
  node.utility_ = utility;
  return node;
}

TreeNode TreeNode::internal(double beta, Prior prior, std::vector<TreeNode> children) {
  if (children.empty()) throw UnsupportedShape("TreeNode: internal node needs children");
  if (!std::isfinite(beta)) throw InvalidBeta("TreeNode: beta must be finite");
  if (prior.size() != static_cast<Eigen::Index>(children.size()))
    throw DimensionMismatch("TreeNode: prior dimension " + std::to_string(prior.size()) +
                            " does not cover " + std::to_string(children.size()) + " children");
  TreeNode node;
  node.beta_ = beta;
  node.prior_ = std::make_shared<const Prior>(std::move(prior));
  node.children_ = std::move(children);
  return node;
}

double TreeNode::utility() const {
  if (!is_leaf()) throw UnsupportedShape("TreeNode: utility() is a leaf accessor");
  return utility_;
}

double TreeNode::beta() const {
  if (is_leaf()) throw UnsupportedShape("TreeNode: beta() is an internal-node accessor");
  return beta_;
}

const Prior& TreeNode::prior() const {
  if (is_leaf()) throw UnsupportedShape("TreeNode: prior() is an internal-node accessor");
  return *prior_;
}

int TreeNode::depth() const {
  int d = 0;
  for (const TreeNode& child : children_) d = std::max(d, child.depth() + 1);
  return d;
}

double evaluate(const TreeNode& tree) {
  if (tree.is_leaf()) return tree.utility();
  Eigen::VectorXd values(static_cast<Eigen::Index>(tree.children().size()));
  for (size_t i = 0; i < tree.children().size(); ++i)
    values[static_cast<Eigen::Index>(i)] = evaluate(tree.children()[i]);
  return certainty_equivalent(values, tree.prior(), tree.beta());
}

double evaluate_limit(const TreeNode& tree) {
  if (tree.is_leaf()) return tree.utility();
  const Prior& prior = tree.prior();
  double agg;
  if (tree.beta() == 0.0) {
    agg = 0.0;
    for (size_t i = 0; i < tree.children().size(); ++i)
      agg += prior[static_cast<Eigen::Index>(i)] * evaluate_limit(tree.children()[i]);
  } else {
    const bool want_max = tree.beta() > 0.0;
    agg = want_max ? -std::numeric_limits<double>::infinity()
                   : std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < tree.children().size(); ++i) {
      if (prior[static_cast<Eigen::Index>(i)] == 0.0) continue;
      const double v = evaluate_limit(tree.children()[i]);
      agg = want_max ? std::max(agg, v) : std::min(agg, v);
    }
  }
  return agg;
}

MatrixGame flatten(const TreeNode& tree) {
  if (tree.depth() != 2)
    throw UnsupportedShape("flatten: only depth-2 trees induce a normal-form game");
  const std::vector<TreeNode>& rows = tree.children();
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::Index m = -1;
  for (const TreeNode& row : rows) {
    if (row.is_leaf())
      throw UnsupportedShape("flatten: every root child must be an internal node");
    const Eigen::Index fan = static_cast<Eigen::Index>(row.children().size());
    if (m < 0) m = fan;
    if (fan != m) throw UnsupportedShape("flatten: children disagree on fan-out");
  }

  Eigen::MatrixXd utilities(n, m);
  Eigen::MatrixXd channel(n, m);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < m; ++y) {
      const TreeNode& leaf = rows[static_cast<size_t>(x)].children()[static_cast<size_t>(y)];
      if (!leaf.is_leaf()) throw UnsupportedShape("flatten: grandchildren must be leaves");
      utilities(x, y) = leaf.utility();
      channel(x, y) = rows[static_cast<size_t>(x)].prior()[y];
    }

  std::vector<std::string> actions, observations;
  for (Eigen::Index x = 0; x < n; ++x) actions.push_back("x" + std::to_string(x + 1));
  for (Eigen::Index y = 0; y < m; ++y) observations.push_back("y" + std::to_string(y + 1));
  return MatrixGame(std::move(actions), std::move(observations), std::move(utilities),
                    std::move(channel));
}

}  // namespace feg
