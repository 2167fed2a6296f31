#include "feg/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "feg/expected_utility.hpp"

namespace feg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Σ p(x)(U(x) − C(x)) skipping zero-mass actions, so a −inf cost on an
// unplayed action contributes nothing instead of NaN.
double expected_net(const Eigen::VectorXd& u, const Policy& p, const CostVector& C) {
  double acc = 0.0;
  for (Eigen::Index x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    if (C[x] == -kInf)
      throw IllDefinedObjective("dual game: -inf cost on an action with positive mass");
    acc += p[x] * (u[x] - C[x]);
  }
  return acc;
}

}  // namespace

CostVector::CostVector(Eigen::VectorXd costs) : costs_(std::move(costs)) {
  if (costs_.size() == 0) throw InvalidUtility("CostVector: empty");
  for (Eigen::Index i = 0; i < costs_.size(); ++i) {
    if (std::isnan(costs_[i]) || costs_[i] == kInf)
      throw InvalidUtility("CostVector: entries must be finite or -inf");
  }
}

bool CostVector::has_negative_infinity() const {
  return (costs_.array() == -kInf).any();
}

RegularizerSpec RegularizerSpec::kl(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InvalidBeta("RegularizerSpec: kl regularizer needs beta > 0");
  return RegularizerSpec(Variant(KlRegularizer{beta}));
}

RegularizerSpec RegularizerSpec::null() { return RegularizerSpec(Variant(NullRegularizer{})); }

RegularizerSpec RegularizerSpec::power(double alpha, double scale) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw InvalidExponent("RegularizerSpec: power regularizer needs alpha > 1");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InvalidExponent("RegularizerSpec: power regularizer needs scale > 0");
  return RegularizerSpec(Variant(PowerRegularizer{alpha, scale}));
}

RegularizerSpec RegularizerSpec::quadratic(double lambda, Eigen::MatrixXd sigma) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidBeta("RegularizerSpec: quadratic regularizer needs lambda > 0");
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0)
    throw DimensionMismatch("RegularizerSpec: Sigma must be square");
  if (!sigma.allFinite() || !sigma.isApprox(sigma.transpose(), 1e-12))
    throw InvalidFunction("RegularizerSpec: Sigma must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw InvalidFunction("RegularizerSpec: Sigma must be positive definite");
  return RegularizerSpec(Variant(QuadraticRegularizer{lambda, std::move(sigma)}));
}

std::string RegularizerSpec::kind() const {
  struct Visitor {
    std::string operator()(const KlRegularizer&) const { return "kl"; }
    std::string operator()(const NullRegularizer&) const { return "null"; }
    std::string operator()(const PowerRegularizer&) const { return "power"; }
    std::string operator()(const QuadraticRegularizer&) const { return "quadratic"; }
  };
  return std::visit(Visitor{}, spec_);
}

double dual_objective(const DecisionProblem& problem, const Policy& p, const CostVector& C) {
  if (!(problem.beta() > 0.0))
    throw InvalidBeta("dual_objective: the adversarial dual needs beta > 0");
  if (p.size() != problem.num_actions() || C.size() != problem.num_actions())
    throw DimensionMismatch("dual_objective: policy or cost dimension mismatch");
  double penalty = 0.0;
  for (Eigen::Index x = 0; x < C.size(); ++x) {
    if (problem.prior()[x] == 0.0) continue;
    penalty += problem.prior()[x] * std::exp(problem.beta() * C[x]);
  }
  return expected_net(problem.utilities(), p, C) + penalty;
}

CostVector best_response_costs(const DecisionProblem& problem, const Policy& p) {
  if (!(problem.beta() > 0.0))
    throw InvalidBeta("best_response_costs: the adversarial dual needs beta > 0");
  if (p.size() != problem.num_actions())
    throw DimensionMismatch("best_response_costs: policy dimension mismatch");
  const double beta = problem.beta();
  Eigen::VectorXd c(p.size());
  for (Eigen::Index x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) {
      c[x] = -kInf;
      continue;
    }
    if (problem.prior()[x] == 0.0)
      throw AbsoluteContinuityViolation(
          "best_response_costs: policy has mass where the prior does not");
    c[x] = std::log(p[x] / (beta * problem.prior()[x])) / beta;
  }
  return CostVector(std::move(c));
}

Eigen::VectorXd net_utilities(const DecisionProblem& problem, const CostVector& C) {
  if (C.size() != problem.num_actions())
    throw DimensionMismatch("net_utilities: cost dimension mismatch");
  Eigen::VectorXd net(C.size());
  for (Eigen::Index x = 0; x < C.size(); ++x)
    net[x] = C[x] == -kInf ? kInf : problem.utilities()[x] - C[x];
  return net;
}

double indifference_residual(const DecisionProblem& problem, const Policy& p) {
  if ((p.weights().array() <= 0.0).any())
    throw RestrictedSupport(
        "indifference_residual: needs a strictly positive policy; use worst_case_costs for "
        "restricted support");
  const CostVector c = best_response_costs(problem, p);
  const Eigen::VectorXd net = net_utilities(problem, c);
  return std::max(net.maxCoeff() - net.minCoeff(), 0.0);
}

double dual_penalty(const RegularizerSpec& reg, const CostVector& C, const Prior& p0) {
  struct Visitor {
    const CostVector& C;
    const Prior& p0;

    double operator()(const KlRegularizer& r) const {
      double acc = 0.0;
      for (Eigen::Index x = 0; x < C.size(); ++x) {
        if (p0[x] == 0.0) continue;
        acc += p0[x] * std::exp(r.beta * C[x]);
      }
      return acc;
    }
    double operator()(const NullRegularizer&) const {
      return (C.values().array() == 0.0).all() ? 0.0 : kInf;
    }
    double operator()(const PowerRegularizer& r) const {
      const double dual = r.alpha / (r.alpha - 1.0);
      double acc = 0.0;
      for (Eigen::Index x = 0; x < C.size(); ++x)
        acc += r.scale * std::pow(std::abs(C[x]), dual);
      return acc;
    }
    double operator()(const QuadraticRegularizer& r) const {
      if (r.sigma.rows() != C.size())
        throw DimensionMismatch("dual_penalty: Sigma dimension does not match costs");
      if (C.has_negative_infinity()) return kInf;
      const Eigen::VectorXd y = Eigen::LLT<Eigen::MatrixXd>(r.sigma).solve(C.values());
      return 0.5 * C.values().dot(y) / r.lambda;
    }
  };
  if (C.size() != p0.size())
    throw DimensionMismatch("dual_penalty: cost and prior dimensions disagree");
  return std::visit(Visitor{C, p0}, reg.spec());
}

namespace {

// The adversary's closed-form reply under each regularizer, as a finite
// vector on the policy's support (zero-mass coordinates get the p → 0
// limit, which is finite except for kl, handled by its caller).
Eigen::VectorXd finite_best_reply(const RegularizerSpec& reg, const Policy& p) {
  struct Visitor {
    const Policy& p;

    Eigen::VectorXd operator()(const KlRegularizer&) const {
      throw IllDefinedObjective("finite_best_reply: kl handled separately");
    }
    Eigen::VectorXd operator()(const NullRegularizer&) const {
      return Eigen::VectorXd::Zero(p.size());
    }
    Eigen::VectorXd operator()(const PowerRegularizer& r) const {
      // argmin_c −p c + scale|c|^a' is c = (p/(a' scale))^{1/(a'−1)}.
      const double dual = r.alpha / (r.alpha - 1.0);
      Eigen::VectorXd c(p.size());
      for (Eigen::Index x = 0; x < p.size(); ++x)
        c[x] = std::pow(p[x] / (dual * r.scale), 1.0 / (dual - 1.0));
      return c;
    }
    Eigen::VectorXd operator()(const QuadraticRegularizer& r) const {
      if (r.sigma.rows() != p.size())
        throw DimensionMismatch("saddle_solve: Sigma dimension does not match actions");
      return r.lambda * (r.sigma * p.weights());
    }
  };
  return std::visit(Visitor{p}, reg.spec());
}

}  // namespace

SaddleSolution saddle_solve(const DecisionProblem& problem, const RegularizerSpec& reg,
                            double tol, long max_iter) {
  const bool is_kl = std::holds_alternative<KlRegularizer>(reg.spec());
  const Eigen::Index n = problem.num_actions();

  // kl plays on the prior's support at the regularizer's beta; the other
  // regularizers ignore the prior and start uniform.
  DecisionProblem prob =
      is_kl ? problem.with_beta(std::get<KlRegularizer>(reg.spec()).beta) : problem;
  const Eigen::VectorXd& u = prob.utilities();

  Eigen::VectorXd log_w(n);
  if (is_kl) {
    for (Eigen::Index x = 0; x < n; ++x)
      log_w[x] = prob.prior()[x] > 0.0 ? std::log(prob.prior()[x]) : -kInf;
  } else {
    log_w.setZero();
  }

  Policy p = normalize(log_w.unaryExpr([](double v) { return v == -kInf ? 0.0 : 1.0; }));
  CostVector costs(Eigen::VectorXd::Zero(n));
  double residual = kInf;
  long t = 1;
  bool converged = false;

  for (; t <= max_iter; ++t) {
    // Current policy from the log weights, shifted for stability.
    double m = log_w.maxCoeff();
    Eigen::VectorXd w(n);
    for (Eigen::Index x = 0; x < n; ++x)
      w[x] = log_w[x] == -kInf ? 0.0 : std::exp(log_w[x] - m);
    p = normalize(w);

    Eigen::VectorXd g(n);
    if (is_kl) {
      costs = best_response_costs(prob, p);
      // Residual over the support: max − min net utility (uniform at the
      // saddle). Off-support coordinates never re-enter.
      double lo = kInf, hi = -kInf;
      for (Eigen::Index x = 0; x < n; ++x) {
        if (p[x] == 0.0) {
          g[x] = 0.0;
          continue;
        }
        const double net = u[x] - costs[x];
        g[x] = net;
        lo = std::min(lo, net);
        hi = std::max(hi, net);
      }
      residual = std::max(hi - lo, 0.0);
    } else {
      const Eigen::VectorXd c = finite_best_reply(reg, p);
      costs = CostVector(c);
      g = u - c;
      // Simplex optimality gap: zero exactly at the constrained maximum.
      residual = std::max(g.maxCoeff() - p.weights().dot(g), 0.0);
    }

    if (residual <= tol) {
      converged = true;
      break;
    }

    const double step = is_kl ? prob.beta() / std::sqrt(static_cast<double>(t))
                              : 1.0 / std::sqrt(static_cast<double>(t));
    for (Eigen::Index x = 0; x < n; ++x)
      if (log_w[x] != -kInf) log_w[x] += step * g[x];
  }

  if (converged && std::holds_alternative<NullRegularizer>(reg.spec())) {
    // The null adversary is powerless, so the saddle is the deterministic
    // argmax vertex; snap to it once the gap closes.
    p = argmax_policy(u);
    costs = CostVector(Eigen::VectorXd::Zero(n));
    residual = 0.0;
  }

  const double objective = expected_net(u, p, costs) + dual_penalty(reg, costs, prob.prior());
  return SaddleSolution{std::move(p), std::move(costs), objective, residual,
                        std::min(t, max_iter), converged};
}

}  // namespace feg
