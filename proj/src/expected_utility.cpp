#include "feg/expected_utility.hpp"

#include <algorithm>
#include <cmath>

namespace feg {

MatrixGame::MatrixGame(std::vector<std::string> actions, std::vector<std::string> observations,
                       Eigen::MatrixXd utility_matrix, std::optional<Eigen::MatrixXd> channel)
    : actions_(std::move(actions)),
      observations_(std::move(observations)),
      utility_matrix_(std::move(utility_matrix)),
      channel_(std::move(channel)) {
  if (utility_matrix_.rows() != static_cast<Eigen::Index>(actions_.size()) ||
      utility_matrix_.cols() != static_cast<Eigen::Index>(observations_.size()))
    throw DimensionMismatch("MatrixGame: utility matrix is " +
                            std::to_string(utility_matrix_.rows()) + "x" +
                            std::to_string(utility_matrix_.cols()) + " but labels give " +
                            std::to_string(actions_.size()) + "x" +
                            std::to_string(observations_.size()));
  if (!utility_matrix_.allFinite())
    throw InvalidUtility("MatrixGame: utility matrix has non-finite entries");
  if (channel_) {
    if (channel_->rows() != utility_matrix_.rows() || channel_->cols() != utility_matrix_.cols())
      throw DimensionMismatch("MatrixGame: channel shape does not match utility matrix");
    for (Eigen::Index x = 0; x < channel_->rows(); ++x)
      channel_->row(x) = Policy(channel_->row(x).transpose()).weights().transpose();
  }
}

const Eigen::MatrixXd& MatrixGame::channel() const {
  if (!channel_) throw ChannelRequired("MatrixGame: operation needs the response channel");
  return *channel_;
}

double UtilityDistribution::mean() const {
  double acc = 0.0;
  for (size_t i = 0; i < support.size(); ++i) acc += support[i] * masses[i];
  return acc;
}

double expected_utility(const MatrixGame& game, const Policy& p) {
  const Eigen::MatrixXd& q = game.channel();
  if (p.size() != game.num_actions())
    throw DimensionMismatch("expected_utility: policy dimension does not match actions");
  return p.weights().dot((game.utility_matrix().array() * q.array()).rowwise().sum().matrix());
}

Policy argmax_policy(const Eigen::VectorXd& cond_values) {
  if (cond_values.size() == 0) throw InvalidUtility("argmax_policy: empty value vector");
  if (!cond_values.allFinite())
    throw InvalidUtility("argmax_policy: values must be finite");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < cond_values.size(); ++i)
    if (cond_values[i] > cond_values[best]) best = i;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(cond_values.size());
  w[best] = 1.0;
  return Policy(std::move(w));
}

UtilityDistribution utility_distribution(const MatrixGame& game, const Policy& p) {
  const Eigen::MatrixXd& q = game.channel();
  if (p.size() != game.num_actions())
    throw DimensionMismatch("utility_distribution: policy dimension does not match actions");

  std::vector<std::pair<double, double>> atoms;  // (utility, mass)
  for (Eigen::Index x = 0; x < game.num_actions(); ++x)
    for (Eigen::Index y = 0; y < game.num_observations(); ++y) {
      const double mass = p[x] * q(x, y);
      if (mass > 0.0) atoms.emplace_back(game.utility_matrix()(x, y), mass);
    }
  std::sort(atoms.begin(), atoms.end());

  UtilityDistribution dist;
  size_t i = 0;
  while (i < atoms.size()) {
    double mass = atoms[i].second;
    double weighted = atoms[i].first * atoms[i].second;
    size_t j = i + 1;
    // Chain-merge values within 1e-12 of their predecessor; the atom sits
    // at the mass-weighted mean so the distribution mean stays exact.
    while (j < atoms.size() && atoms[j].first - atoms[j - 1].first <= 1e-12) {
      mass += atoms[j].second;
      weighted += atoms[j].first * atoms[j].second;
      ++j;
    }
    dist.support.push_back(weighted / mass);
    dist.masses.push_back(mass);
    i = j;
  }
  return dist;
}

namespace {

std::pair<Policy, double> extremal_rule(const MatrixGame& game, bool pessimistic) {
  const Eigen::MatrixXd& u = game.utility_matrix();
  const Eigen::VectorXd w =
      pessimistic ? u.rowwise().minCoeff().eval() : u.rowwise().maxCoeff().eval();
  Policy p = argmax_policy(w);
  return {p, w.maxCoeff()};
}

}  // namespace

std::pair<Policy, double> minmax_rule(const MatrixGame& game) {
  return extremal_rule(game, true);
}

std::pair<Policy, double> maxmax_rule(const MatrixGame& game) {
  return extremal_rule(game, false);
}

}  // namespace feg
