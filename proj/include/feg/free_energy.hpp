#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "feg/simplex.hpp"

namespace feg {

/// A single-step decision problem: finite action set with per-action
/// utilities, a prior policy, and an inverse temperature β (1/utiles).
/// β > 0 rewards deviation toward high utility, β < 0 penalizes risk,
/// β = 0 pins the agent to the prior.
class DecisionProblem {
 public:
  DecisionProblem(std::vector<std::string> actions, Eigen::VectorXd utilities, Prior prior,
                  double beta);

  const std::vector<std::string>& actions() const { return actions_; }
  const Eigen::VectorXd& utilities() const { return utilities_; }
  const Prior& prior() const { return prior_; }
  double beta() const { return beta_; }
  Eigen::Index num_actions() const { return utilities_.size(); }

  /// Same problem at a different inverse temperature.
  DecisionProblem with_beta(double beta) const;

 private:
  std::vector<std::string> actions_;
  Eigen::VectorXd utilities_;
  Prior prior_;
  double beta_;
};

/// Equilibrium solution summary: free_energy = expected_utility minus
/// information_cost holds by construction, and free_energy equals
/// certainty_equivalent at the equilibrium policy.
struct FreeEnergyReport {
  Policy policy;
  double free_energy;
  double certainty_equivalent;
  double expected_utility;
  double information_cost;
};

/// Σ p(x)U(x) − (1/β) KL(p‖p₀). At β = 0 the information term is the hard
/// constraint p = p₀: the prior policy evaluates to its mean utility, any
/// other policy throws InvalidBeta.
double free_energy(const DecisionProblem& problem, const Policy& p);

/// The maximizer (minimizer for β < 0) p*(x) ∝ p₀(x) e^{βU(x)}, computed
/// with a log-space shift. β = 0 returns the prior exactly; zero-prior
/// actions keep zero mass.
Policy equilibrium(const DecisionProblem& problem);

/// (1/β) log Σ p₀(x) e^{βU(x)}: the optimal value of free_energy. Runs
/// from min U (β → −∞) through the prior mean (β = 0) to max U (β → ∞).
double certainty_equivalent(const DecisionProblem& problem);

/// Same aggregator over a bare value vector, the form used by recursive
/// tree evaluation.
double certainty_equivalent(const Eigen::VectorXd& values, const Prior& prior, double beta);

/// Equilibrium policy with its value decomposition.
FreeEnergyReport solve(const DecisionProblem& problem);

struct SweepRow {
  double beta;
  double certainty_equivalent;
  Policy policy;
  double entropy;
  double kl_to_prior;
};

/// One equilibrium row per β, in input order; rows are independent.
/// Throws InvalidBeta on non-finite entries.
std::vector<SweepRow> beta_sweep(const DecisionProblem& problem,
                                 const std::vector<double>& betas);

}  // namespace feg
