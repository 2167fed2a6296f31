#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "feg/free_energy.hpp"

namespace feg {

/// Rejection-sampler configuration. `utility_bound` must dominate max U;
/// a loose bound only lowers the acceptance rate, never correctness, and
/// the sampler cannot check it without evaluating every utility (the thing
/// it exists to avoid). A proposed action whose utility exceeds the bound
/// is detected on the spot and rejected as InvalidUtility.
struct SamplerConfig {
  double utility_bound;
  std::uint64_t seed = 0;
  long max_attempts_per_sample = 1000000;
};

struct SampleStats {
  long proposals = 0;
  long acceptances = 0;
  long utility_evaluations = 0;

  double acceptance_rate() const {
    return proposals == 0 ? 0.0 : static_cast<double>(acceptances) / static_cast<double>(proposals);
  }
};

struct SampleResult {
  std::vector<Eigen::Index> indices;
  SampleStats stats;
};

/// Draws `count` exact equilibrium samples: propose x ~ p₀, accept with
/// probability e^{β(U(x) − bound)}. Utilities are read only on proposed
/// actions through the supplied handle, whose call count is reported.
/// Requires β ≥ 0 (β = 0 degenerates to prior sampling). A sample whose
/// attempts exceed the configured cap throws SamplerStalled.
///
/// Each sample index owns a derived RNG stream, so the sequence for a
/// given seed is independent of how sampling is partitioned; the stream
/// layout is fixed (documented in the implementation) and is part of the
/// output contract.
SampleResult sample_equilibrium(const DecisionProblem& problem, const SamplerConfig& cfg,
                                long count,
                                const std::function<double(Eigen::Index)>& utility);

/// Convenience overload reading utilities straight from the problem.
SampleResult sample_equilibrium(const DecisionProblem& problem, const SamplerConfig& cfg,
                                long count);

/// Samples for the global index range [first, first + count): concatenating
/// ranges reproduces a single full run sample for sample.
SampleResult sample_equilibrium_range(const DecisionProblem& problem, const SamplerConfig& cfg,
                                      long first, long count,
                                      const std::function<double(Eigen::Index)>& utility);

}  // namespace feg
