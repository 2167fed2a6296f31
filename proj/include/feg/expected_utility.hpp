#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feg/simplex.hpp"

namespace feg {

/// A one-shot game against an environment: the agent picks an action x
/// (a row), the environment responds with an observation y (a column),
/// and the agent receives U(x,y) utiles. The optional channel q(y|x)
/// fixes the environment's response distribution per action.
class MatrixGame {
 public:
  /// Throws DimensionMismatch when matrix shape and label lists disagree,
  /// InvalidUtility on non-finite utilities, InvalidDistribution when a
  /// channel row is not a distribution over observations.
  MatrixGame(std::vector<std::string> actions, std::vector<std::string> observations,
             Eigen::MatrixXd utility_matrix,
             std::optional<Eigen::MatrixXd> channel = std::nullopt);

  const std::vector<std::string>& actions() const { return actions_; }
  const std::vector<std::string>& observations() const { return observations_; }
  const Eigen::MatrixXd& utility_matrix() const { return utility_matrix_; }
  bool has_channel() const { return channel_.has_value(); }
  /// Throws ChannelRequired when no channel was supplied.
  const Eigen::MatrixXd& channel() const;

  Eigen::Index num_actions() const { return utility_matrix_.rows(); }
  Eigen::Index num_observations() const { return utility_matrix_.cols(); }

 private:
  std::vector<std::string> actions_;
  std::vector<std::string> observations_;
  Eigen::MatrixXd utility_matrix_;
  std::optional<Eigen::MatrixXd> channel_;
};

/// The utility random variable induced by playing p against the channel:
/// distinct utility values (strictly increasing) with their probabilities.
struct UtilityDistribution {
  std::vector<double> support;
  std::vector<double> masses;

  double mean() const;
};

/// Σ_x p(x) Σ_y q(y|x) U(x,y). Requires the game's channel.
double expected_utility(const MatrixGame& game, const Policy& p);

/// Kronecker-delta policy on the maximizing index, ties broken by lowest
/// index. Throws InvalidUtility on empty or non-finite input.
Policy argmax_policy(const Eigen::VectorXd& cond_values);

/// Distribution of U under (p, channel); outcome utilities closer than
/// 1e-12 are merged into one atom at their mass-weighted mean.
UtilityDistribution utility_distribution(const MatrixGame& game, const Policy& p);

/// Pessimistic rule: per-action worst case w(x) = min_y U(x,y), then the
/// delta policy on argmax_x w(x). Point-mass responses suffice because the
/// environment's inner objective is linear in q(.|x). Returns the policy
/// and the attained value max_x min_y U(x,y).
std::pair<Policy, double> minmax_rule(const MatrixGame& game);

/// Optimistic rule: as minmax_rule with max_y in place of min_y.
std::pair<Policy, double> maxmax_rule(const MatrixGame& game);

}  // namespace feg
