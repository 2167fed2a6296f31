#pragma once

#include <memory>
#include <vector>

#include "feg/expected_utility.hpp"
#include "feg/free_energy.hpp"

namespace feg {

/// Stand-in inverse temperature for "aggregate by max" (negate for min).
/// At |β| = 1e6 and leaf values in [0,1] the deviation from the exact
/// extremum is at most (1/|β|) log(1/min prior).
inline constexpr double kExtremeBeta = 1e6;

/// A finite decision tree. Leaves carry a utility; internal nodes carry a
/// prior over their children and a per-node β, and evaluate to the
/// certainty equivalent of their children's values. One aggregator covers
/// min (β ≪ 0), expectation (β = 0) and max (β ≫ 0).
class TreeNode {
 public:
  static TreeNode leaf(double utility);
  /// Throws DimensionMismatch when the prior does not cover the children,
  /// UnsupportedShape when `children` is empty.
  static TreeNode internal(double beta, Prior prior, std::vector<TreeNode> children);

  bool is_leaf() const { return children_.empty(); }
  double utility() const;         // leaf only, else UnsupportedShape
  double beta() const;            // internal only, else UnsupportedShape
  const Prior& prior() const;     // internal only, else UnsupportedShape
  const std::vector<TreeNode>& children() const { return children_; }

  int depth() const;  // leaf = 0

 private:
  TreeNode() = default;

  double utility_ = 0.0;
  double beta_ = 0.0;
  std::shared_ptr<const Prior> prior_;  // set iff internal
  std::vector<TreeNode> children_;
};

/// Bottom-up nested certainty-equivalent value of the tree.
double evaluate(const TreeNode& tree);

/// Exact limit recursion used as an oracle for extreme β: each internal
/// node aggregates its children by max over the prior's support (β > 0),
/// min over the support (β < 0), or the prior expectation (β = 0).
double evaluate_limit(const TreeNode& tree);

/// Rewrites a depth-2 tree as the induced normal-form game: root children
/// become actions, grandchildren leaves become the utility matrix, and the
/// children's priors become the response channel rows. Requires every
/// child to have the same fan-out; anything else throws UnsupportedShape.
MatrixGame flatten(const TreeNode& tree);

}  // namespace feg
