#include "feg/sampler.hpp"

#include <cmath>
#include <random>

namespace feg {
namespace {

// SplitMix64 step; mixes the user seed with the sample index so every
// sample owns an independent, partition-invariant stream.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits. std::uniform_real_distribution
// is implementation-defined, so the draw is spelled out to keep the stream
// part of the contract.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw from the prior: smallest index whose cumulative weight
// exceeds u.
Eigen::Index propose(const Eigen::VectorXd& cumulative, double u) {
  Eigen::Index lo = 0;
  Eigen::Index hi = cumulative.size() - 1;
  while (lo < hi) {
    const Eigen::Index mid = (lo + hi) / 2;
    if (u < cumulative[mid])
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace

SampleResult sample_equilibrium_range(const DecisionProblem& problem, const SamplerConfig& cfg,
                                      long first, long count,
                                      const std::function<double(Eigen::Index)>& utility) {
  if (problem.beta() < 0.0)
    throw InvalidBeta("sample_equilibrium: rejection sampling needs beta >= 0");
  if (cfg.max_attempts_per_sample < 1)
    throw SamplerStalled("sample_equilibrium: max_attempts_per_sample must be at least 1", 0);
  if (first < 0 || count < 0)
    throw InvalidUtility("sample_equilibrium: sample index range must be nonnegative");

  Eigen::VectorXd cumulative(problem.prior().size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < problem.prior().size(); ++i) {
    acc += problem.prior()[i];
    cumulative[i] = acc;
  }
  cumulative[problem.prior().size() - 1] = 1.0;

  SampleResult result;
  result.indices.reserve(static_cast<size_t>(count));
  for (long k = first; k < first + count; ++k) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(k))));
    long attempts = 0;
    for (;;) {
      if (attempts >= cfg.max_attempts_per_sample)
        throw SamplerStalled("sample_equilibrium: sample " + std::to_string(k) +
                                 " exceeded the attempt cap",
                             attempts);
      ++attempts;
      ++result.stats.proposals;
      const Eigen::Index x = propose(cumulative, next_unit(rng));
      ++result.stats.utility_evaluations;
      const double u = utility(x);
      if (u > cfg.utility_bound)
        throw InvalidUtility("sample_equilibrium: proposed action " + std::to_string(x) +
                             " has utility above the declared bound");
      const double accept_probability = std::exp(problem.beta() * (u - cfg.utility_bound));
      if (next_unit(rng) < accept_probability) {
        result.indices.push_back(x);
        ++result.stats.acceptances;
        break;
      }
    }
  }
  return result;
}

SampleResult sample_equilibrium(const DecisionProblem& problem, const SamplerConfig& cfg,
                                long count,
                                const std::function<double(Eigen::Index)>& utility) {
  return sample_equilibrium_range(problem, cfg, 0, count, utility);
}

SampleResult sample_equilibrium(const DecisionProblem& problem, const SamplerConfig& cfg,
                                long count) {
  return sample_equilibrium_range(
      problem, cfg, 0, count,
      [&problem](Eigen::Index x) { return problem.utilities()[x]; });
}

}  // namespace feg
