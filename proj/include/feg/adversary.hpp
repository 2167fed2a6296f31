#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>

#include "feg/free_energy.hpp"
#include "feg/simplex.hpp"

namespace feg {

/// Per-action adversarial costs in utiles. Entries may be −inf (the
/// adversary's limit penalty on actions the agent never plays) but never
/// +inf or NaN.
class CostVector {
 public:
  explicit CostVector(Eigen::VectorXd costs);

  const Eigen::VectorXd& values() const { return costs_; }
  double operator[](Eigen::Index i) const { return costs_[i]; }
  Eigen::Index size() const { return costs_.size(); }
  bool has_negative_infinity() const;

 private:
  Eigen::VectorXd costs_;
};

struct KlRegularizer {
  double beta;
};
struct NullRegularizer {};
struct PowerRegularizer {
  double alpha;
  double scale;
};
struct QuadraticRegularizer {
  double lambda;
  Eigen::MatrixXd sigma;
};

/// The information-cost family the adversary prices:
///   kl        − (1/β)KL to the prior; penalty Σ p₀ e^{βC}
///   null      − no regularization; the penalty is an indicator pinning
///               C ≡ 0, an adversary devoid of power
///   power     − scale·Σ|p|^α; penalty scale·Σ|C|^{α'} with the Hölder
///               conjugate exponent 1/α + 1/α' = 1
///   quadratic − (λ/2) pᵀΣp; penalty (1/(2λ)) CᵀΣ⁻¹C, the exact convex
///               conjugate
class RegularizerSpec {
 public:
  static RegularizerSpec kl(double beta);
  static RegularizerSpec null();
  static RegularizerSpec power(double alpha, double scale);
  static RegularizerSpec quadratic(double lambda, Eigen::MatrixXd sigma);

  using Variant =
      std::variant<KlRegularizer, NullRegularizer, PowerRegularizer, QuadraticRegularizer>;
  const Variant& spec() const { return spec_; }

  /// One of "kl", "null", "power", "quadratic".
  std::string kind() const;

 private:
  explicit RegularizerSpec(Variant spec) : spec_(std::move(spec)) {}
  Variant spec_;
};

/// Saddle-point search outcome. `converged` implies the residual met the
/// requested tolerance; otherwise the fields hold the last iterate.
struct SaddleSolution {
  Policy policy;
  CostVector costs;
  double objective;
  double indifference_residual;
  long iterations;
  bool converged;
};

/// Σ p(x)[U(x) − C(x)] + Σ p₀(x) e^{βC(x)}: the agent's payoff against
/// cost vector C, with the adversary's exponential budget added back.
/// A −inf cost is only admissible on actions the policy never plays
/// (contributing zero to both sums); otherwise IllDefinedObjective.
/// Requires β > 0.
double dual_objective(const DecisionProblem& problem, const Policy& p, const CostVector& C);

/// The adversary's optimal reply to p: C*(x) = (1/β) log(p(x)/(β p₀(x)))
/// where p(x) > 0, −inf where p(x) = 0. Requires β > 0 and a prior
/// covering the policy's support.
CostVector best_response_costs(const DecisionProblem& problem, const Policy& p);

/// The costs the agent should expect when the adversary has seen its
/// policy; identical to best_response_costs, named from the agent's side.
inline CostVector worst_case_costs(const DecisionProblem& problem, const Policy& p) {
  return best_response_costs(problem, p);
}

/// Componentwise U − C; −inf costs give +inf net utility.
Eigen::VectorXd net_utilities(const DecisionProblem& problem, const CostVector& C);

/// max − min of the net utilities U − C*(p) over the full action set;
/// zero exactly when p is the equilibrium. Requires p strictly positive,
/// else RestrictedSupport.
double indifference_residual(const DecisionProblem& problem, const Policy& p);

/// The adversary's budget for playing C under the given regularizer; the
/// null case returns +inf for any nonzero C rather than throwing.
double dual_penalty(const RegularizerSpec& reg, const CostVector& C, const Prior& p0);

/// Multiplicative-weights ascent on the policy against closed-form
/// best-response costs. Convergence is measured by the indifference
/// residual for kl and by the simplex optimality gap
/// max_x g(x) − Σ p g for the other regularizers. Never throws on
/// non-convergence; inspect `converged`.
SaddleSolution saddle_solve(const DecisionProblem& problem, const RegularizerSpec& reg,
                            double tol, long max_iter);

}  // namespace feg
