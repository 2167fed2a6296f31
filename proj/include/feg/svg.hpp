#pragma once

#include <string>
#include <vector>

#include "feg/adversary.hpp"
#include "feg/free_energy.hpp"

namespace feg {

/// Grouped bar figure for an attack table: per action, the policy mass,
/// the adversary's best-response cost, and the net utility. Infinite bars
/// are clamped to the chart edge and labeled "-inf"/"+inf". Deterministic
/// output for identical inputs.
std::string attack_svg(const std::vector<std::string>& action_labels, const Policy& policy,
                       const CostVector& costs, const Eigen::VectorXd& net);

/// Line figure of certainty equivalent against β for a sweep; x positions
/// are rank-uniform so log-spaced sweeps stay readable.
std::string sweep_svg(const std::vector<SweepRow>& rows);

}  // namespace feg
