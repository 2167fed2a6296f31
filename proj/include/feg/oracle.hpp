#pragma once

#include "feg/adversary.hpp"
#include "feg/free_energy.hpp"
#include "feg/legendre.hpp"
#include "feg/simplex.hpp"

namespace feg {

/// Brute-force verification outcome. `gap_to_closed_form` is signed as
/// closed form minus oracle; a check passes when |gap| ≤ certificate.
struct OracleReport {
  double best_value;
  Policy best_policy;
  double gap_to_closed_form;
  double resolution;
  double certificate;

  bool passes() const { return std::abs(gap_to_closed_form) <= certificate; }
};

/// Policies evaluated by grid searches are capped at this many grid points.
inline constexpr long kGridBudget = 2000000;

/// Exhaustive free-energy maximization over grid_policies, reporting the
/// gap to the closed-form certainty equivalent. The certificate is the
/// Lipschitz bound L·n·resolution with L = max|U| + (1/β)(1 + |log min p₀|).
/// Budget: n ≤ 4 and at most kGridBudget grid points, else BudgetExceeded.
OracleReport grid_max_free_energy(const DecisionProblem& problem, double resolution);

/// Grid max-min of the dual game: for each grid policy the inner
/// minimization over per-coordinate cost grids (exact because the
/// objective is separable in C), then the outer maximization. The gap is
/// measured against the saddle prediction certainty_equivalent +
/// (1/β)(log β + 1). Budget: n ≤ 3, else BudgetExceeded. Requires β > 0.
OracleReport minimax_grid(const DecisionProblem& problem, double policy_resolution,
                          const Grid1D& cost_grid);

struct ExchangeReport {
  double max_min;
  double min_max;
  double gap;    // |max_min − min_max|
  double bound;  // 10 × (policy resolution + cost grid spacing)

  bool passes() const { return gap <= bound; }
};

/// Measures the duality gap on the grids directly: max-min as in
/// minimax_grid; min-max as the exact minimum over the joint cost grid of
/// max_x (U−C) + Σ p₀ e^{βC}, computed by sweeping the value of the max
/// term (the penalty is increasing in each C(x), so the pointwise-smallest
/// feasible grid vector dominates all others at a given max level).
/// Requires β > 0; budget as minimax_grid.
ExchangeReport saddle_exchange_check(const DecisionProblem& problem, double policy_resolution,
                                     const Grid1D& cost_grid);

}  // namespace feg
