#include "feg/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace feg {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log p₀(x) + βU(x) per action, -inf where the prior has no mass. The
// shared ingredient of equilibrium and certainty_equivalent.
Eigen::VectorXd log_tilted(const Eigen::VectorXd& u, const Prior& p0, double beta) {
  Eigen::VectorXd out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    out[i] = p0[i] > 0.0 ? std::log(p0[i]) + beta * u[i] : kNegInf;
  return out;
}

}  // namespace

DecisionProblem::DecisionProblem(std::vector<std::string> actions, Eigen::VectorXd utilities,
                                 Prior prior, double beta)
    : actions_(std::move(actions)),
      utilities_(std::move(utilities)),
      prior_(std::move(prior)),
      beta_(beta) {
  if (static_cast<Eigen::Index>(actions_.size()) != utilities_.size() ||
      prior_.size() != utilities_.size())
    throw DimensionMismatch("DecisionProblem: actions, utilities and prior sizes disagree");
  if (!utilities_.allFinite())
    throw InvalidUtility("DecisionProblem: utilities must be finite");
  if (!std::isfinite(beta_)) throw InvalidBeta("DecisionProblem: beta must be finite");
}

DecisionProblem DecisionProblem::with_beta(double beta) const {
  return DecisionProblem(actions_, utilities_, prior_, beta);
}

double free_energy(const DecisionProblem& problem, const Policy& p) {
  const double mean_u = p.weights().dot(problem.utilities());
  const double kl = kl_divergence(p, problem.prior());
  if (problem.beta() == 0.0) {
    if (kl > kSimplexTolerance)
      throw InvalidBeta("free_energy: at beta = 0 only the prior policy has finite value");
    return mean_u;
  }
  return mean_u - kl / problem.beta();
}

Policy equilibrium(const DecisionProblem& problem) {
  if (problem.beta() == 0.0) return problem.prior().as_policy();
  const Eigen::VectorXd lt = log_tilted(problem.utilities(), problem.prior(), problem.beta());
  double m = kNegInf;
  for (Eigen::Index i = 0; i < lt.size(); ++i) m = std::max(m, lt[i]);
  if (m == kNegInf) throw EmptySupport("equilibrium: prior has empty support");
  Eigen::VectorXd w(lt.size());
  for (Eigen::Index i = 0; i < lt.size(); ++i)
    w[i] = lt[i] == kNegInf ? 0.0 : std::exp(lt[i] - m);
  return normalize(w);
}

double certainty_equivalent(const Eigen::VectorXd& values, const Prior& prior, double beta) {
  if (values.size() != prior.size())
    throw DimensionMismatch("certainty_equivalent: values and prior sizes disagree");
  if (!values.allFinite())
    throw InvalidUtility("certainty_equivalent: values must be finite");
  if (beta == 0.0) return prior.weights().dot(values);
  return log_sum_exp(log_tilted(values, prior, beta)) / beta;
}

double certainty_equivalent(const DecisionProblem& problem) {
  return certainty_equivalent(problem.utilities(), problem.prior(), problem.beta());
}

FreeEnergyReport solve(const DecisionProblem& problem) {
  Policy p = equilibrium(problem);
  const double eu = p.weights().dot(problem.utilities());
  const double kl = kl_divergence(p, problem.prior());
  const double cost = problem.beta() == 0.0 ? 0.0 : kl / problem.beta();
  return FreeEnergyReport{std::move(p), eu - cost, certainty_equivalent(problem), eu, cost};
}

std::vector<SweepRow> beta_sweep(const DecisionProblem& problem,
                                 const std::vector<double>& betas) {
  for (double b : betas)
    if (!std::isfinite(b)) throw InvalidBeta("beta_sweep: betas must be finite");
  std::vector<SweepRow> rows;
  rows.reserve(betas.size());
  for (double b : betas) {
    const DecisionProblem at = problem.with_beta(b);
    Policy p = equilibrium(at);
    const double kl = kl_divergence(p, problem.prior());
    const double ent = entropy(p);
    rows.push_back(SweepRow{b, certainty_equivalent(at), std::move(p), ent, kl});
  }
  return rows;
}

}  // namespace feg
