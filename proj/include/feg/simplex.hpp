#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "feg/errors.hpp"

namespace feg {

/// Absolute acceptance tolerance on the weight sum of a distribution.
/// Inputs within it are renormalized silently, outside it rejected.
inline constexpr double kSimplexTolerance = 1e-12;

/// A point on the probability simplex over a finite action set.
/// Entries are nonnegative and sum to one within kSimplexTolerance.
class Policy {
 public:
  /// Validates and (if needed) renormalizes `weights`. Throws
  /// InvalidDistribution when an entry is negative or non-finite, or when
  /// the sum deviates from one by more than kSimplexTolerance.
  explicit Policy(Eigen::VectorXd weights);

  const Eigen::VectorXd& weights() const { return weights_; }
  double operator[](Eigen::Index i) const { return weights_[i]; }
  Eigen::Index size() const { return weights_.size(); }

  friend bool operator==(const Policy& a, const Policy& b) {
    return a.weights_ == b.weights_;
  }

 private:
  struct Trusted {};
  Policy(Eigen::VectorXd weights, Trusted) : weights_(std::move(weights)) {}

  Eigen::VectorXd weights_;

  friend Policy normalize(const Eigen::VectorXd&);
};

/// A prior policy. Same invariants as Policy plus a strictness flag
/// recording whether every entry is positive (required by the KL
/// divergence and by the adversary's closed-form optimal cost).
class Prior {
 public:
  explicit Prior(Eigen::VectorXd weights);
  explicit Prior(Policy policy);

  const Eigen::VectorXd& weights() const { return policy_.weights(); }
  double operator[](Eigen::Index i) const { return policy_[i]; }
  Eigen::Index size() const { return policy_.size(); }
  const Policy& as_policy() const { return policy_; }
  bool strictly_positive() const { return strictly_positive_; }

 private:
  Policy policy_;
  bool strictly_positive_;
};

/// Scales a nonnegative vector onto the simplex. At least one entry must be
/// positive and none negative or non-finite; otherwise InvalidDistribution.
/// Idempotent: vectors already summing to one (within a few ulps) are
/// returned unchanged.
Policy normalize(const Eigen::VectorXd& raw);

/// KL divergence sum_x p(x) log(p(x)/q(x)) in natural log, with the
/// convention 0 log(0/q) = 0. Throws AbsoluteContinuityViolation when p
/// puts mass where q has none. Result is clamped to be nonnegative.
double kl_divergence(const Policy& p, const Prior& p0);
double kl_divergence(const Policy& p, const Policy& q);

/// Shannon entropy -sum p log p in nats.
double entropy(const Policy& p);

/// Half the L1 distance between two same-dimension policies.
double total_variation(const Policy& p, const Policy& q);

/// log sum_i exp(v_i), computed with a max shift so no overflow occurs for
/// |v_i| up to 1e6. Entries equal to -infinity are treated as absent terms;
/// all entries -infinity throws EmptySupport. Accepts any Eigen expression.
template <typename Derived>
double log_sum_exp(const Eigen::MatrixBase<Derived>& values) {
  const Eigen::Index n = values.size();
  double m = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = values[i];
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw Error("log_sum_exp: input must be finite or -inf");
    if (v > m) m = v;
  }
  if (m == -std::numeric_limits<double>::infinity())
    throw EmptySupport("log_sum_exp: all inputs are -inf");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) acc += std::exp(values[i] - m);
  return m + std::log(acc);
}

/// All policies whose weights are multiples of `resolution` (all
/// compositions of 1/resolution into n parts). 1/resolution must be
/// integral, else InvalidResolution. Count is C(1/resolution + n - 1, n - 1);
/// emitted in lexicographic order of the first coordinate ascending.
std::vector<Policy> grid_policies(int n, double resolution);

}  // namespace feg
