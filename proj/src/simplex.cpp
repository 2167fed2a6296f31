#include "feg/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace feg {
namespace {

void check_entries(const Eigen::VectorXd& w, const char* who) {
  if (w.size() == 0) throw InvalidDistribution(std::string(who) + ": empty weight vector");
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]))
      throw InvalidDistribution(std::string(who) + ": non-finite weight at index " +
                                std::to_string(i));
    if (w[i] < 0.0)
      throw InvalidDistribution(std::string(who) + ": negative weight at index " +
                                std::to_string(i));
  }
}

// Sums within this many ulps of one are left untouched, which makes
// normalize exactly idempotent.
double ulp_slack(Eigen::Index n) {
  return 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n);
}

}  // namespace

Policy::Policy(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  check_entries(weights_, "Policy");
  const double s = weights_.sum();
  if (std::abs(s - 1.0) > kSimplexTolerance)
    throw InvalidDistribution("Policy: weights sum to " + std::to_string(s) +
                              ", outside tolerance " + std::to_string(kSimplexTolerance));
  if (std::abs(s - 1.0) > ulp_slack(weights_.size())) weights_ /= s;
}

Prior::Prior(Eigen::VectorXd weights) : Prior(Policy(std::move(weights))) {}

Prior::Prior(Policy policy)
    : policy_(std::move(policy)),
      strictly_positive_((policy_.weights().array() > 0.0).all()) {}

Policy normalize(const Eigen::VectorXd& raw) {
  check_entries(raw, "normalize");
  const double s = raw.sum();
  if (s <= 0.0) throw InvalidDistribution("normalize: all weights are zero");
  if (std::abs(s - 1.0) <= ulp_slack(raw.size())) return Policy(raw, Policy::Trusted{});
  return Policy(raw / s, Policy::Trusted{});
}

double kl_divergence(const Policy& p, const Prior& p0) {
  return kl_divergence(p, p0.as_policy());
}

double kl_divergence(const Policy& p, const Policy& q) {
  if (p.size() != q.size())
    throw DimensionMismatch("kl_divergence: dimensions " + std::to_string(p.size()) +
                            " vs " + std::to_string(q.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;  // 0 log 0 = 0
    if (q[i] == 0.0)
      throw AbsoluteContinuityViolation(
          "kl_divergence: p has mass at index " + std::to_string(i) +
          " where the reference does not");
    acc += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(acc, 0.0);
}

double entropy(const Policy& p) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) acc -= p[i] * std::log(p[i]);
  return std::max(acc, 0.0);
}

double total_variation(const Policy& p, const Policy& q) {
  if (p.size() != q.size())
    throw DimensionMismatch("total_variation: dimensions " + std::to_string(p.size()) +
                            " vs " + std::to_string(q.size()));
  return 0.5 * (p.weights() - q.weights()).lpNorm<1>();
}

std::vector<Policy> grid_policies(int n, double resolution) {
  if (n <= 0) throw InvalidDistribution("grid_policies: need at least one action");
  if (!(resolution > 0.0) || resolution > 1.0)
    throw InvalidResolution("grid_policies: resolution must lie in (0, 1]");
  const double steps_real = 1.0 / resolution;
  const long steps = std::lround(steps_real);
  if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9)
    throw InvalidResolution("grid_policies: 1/resolution is not an integer");

  std::vector<Policy> out;
  std::vector<long> counts(static_cast<size_t>(n), 0);
  const double inv = 1.0 / static_cast<double>(steps);
  // Depth-first over compositions of `steps` into n parts, lexicographic in
  // the weight vector.
  auto emit = [&] {
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = static_cast<double>(counts[static_cast<size_t>(i)]) * inv;
    out.push_back(normalize(w));
  };
  auto rec = [&](auto&& self, int coord, long remaining) -> void {
    if (coord == n - 1) {
      counts[static_cast<size_t>(coord)] = remaining;
      emit();
      return;
    }
    for (long k = 0; k <= remaining; ++k) {
      counts[static_cast<size_t>(coord)] = k;
      self(self, coord + 1, remaining - k);
    }
  };
  rec(rec, 0, steps);
  return out;
}

}  // namespace feg
