#include "feg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace feg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long resolution_steps(double resolution) {
  if (!(resolution > 0.0) || resolution > 1.0)
    throw InvalidResolution("oracle: resolution must lie in (0, 1]");
  const double steps_real = 1.0 / resolution;
  const long steps = std::lround(steps_real);
  if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9)
    throw InvalidResolution("oracle: 1/resolution is not an integer");
  return steps;
}

double composition_count(long steps, Eigen::Index n) {
  double count = 1.0;
  for (Eigen::Index i = 1; i < n; ++i)
    count *= static_cast<double>(steps + i) / static_cast<double>(i);
  return count;
}

// Visits every composition of `steps` into n nonnegative parts in the same
// lexicographic order as grid_policies; fn sees the counts vector.
template <typename Fn>
void for_each_composition(Eigen::Index n, long steps, Fn&& fn) {
  std::vector<long> counts(static_cast<size_t>(n), 0);
  auto rec = [&](auto&& self, Eigen::Index coord, long remaining) -> void {
    if (coord == n - 1) {
      counts[static_cast<size_t>(coord)] = remaining;
      fn(counts);
      return;
    }
    for (long k = 0; k <= remaining; ++k) {
      counts[static_cast<size_t>(coord)] = k;
      self(self, coord + 1, remaining - k);
    }
  };
  rec(rec, 0, steps);
}

Policy policy_from_counts(const std::vector<long>& counts, double resolution) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(counts.size()));
  for (size_t i = 0; i < counts.size(); ++i)
    w[static_cast<Eigen::Index>(i)] = static_cast<double>(counts[i]) * resolution;
  return normalize(w);
}

// Per-coordinate inner minima of the dual objective's C-dependent part:
// table(x, k) = min over grid c of −(k·res)c + p₀(x)e^{βc}. Exact on the
// grid because the objective separates across coordinates.
struct InnerMinTable {
  Eigen::MatrixXd minima;          // n × (steps+1)
  Eigen::MatrixXd minimizers;      // matching argmin cost values
  std::vector<double> exp_grid;    // e^{βc} per grid point

  InnerMinTable(const DecisionProblem& problem, long steps, double resolution,
                const Grid1D& grid) {
    const Eigen::Index n = problem.num_actions();
    exp_grid.resize(static_cast<size_t>(grid.points));
    for (int i = 0; i < grid.points; ++i)
      exp_grid[static_cast<size_t>(i)] = std::exp(problem.beta() * grid.point(i));
    minima.resize(n, steps + 1);
    minimizers.resize(n, steps + 1);
    for (Eigen::Index x = 0; x < n; ++x) {
      const double p0 = problem.prior()[x];
      for (long k = 0; k <= steps; ++k) {
        const double mass = static_cast<double>(k) * resolution;
        double best = kInf;
        int best_i = 0;
        for (int i = 0; i < grid.points; ++i) {
          const double v = -mass * grid.point(i) + p0 * exp_grid[static_cast<size_t>(i)];
          if (v < best) {
            best = v;
            best_i = i;
          }
        }
        minima(x, k) = best;
        minimizers(x, k) = grid.point(best_i);
      }
    }
  }
};

struct GridMaxMin {
  double value;
  std::vector<long> best_counts;
};

// max over grid policies of [Σ p U + Σ_x inner_min(x, p_x)], the grid
// max-min value of the dual game.
GridMaxMin dual_grid_max_min(const DecisionProblem& problem, double policy_resolution,
                             const Grid1D& cost_grid) {
  if (!(problem.beta() > 0.0))
    throw InvalidBeta("oracle: the dual game needs beta > 0");
  if (problem.num_actions() > 3)
    throw BudgetExceeded("oracle: dual-game grids are capped at 3 actions");
  const long steps = resolution_steps(policy_resolution);
  if (composition_count(steps, problem.num_actions()) > static_cast<double>(kGridBudget))
    throw BudgetExceeded("oracle: policy grid exceeds " + std::to_string(kGridBudget) +
                         " points");

  const InnerMinTable table(problem, steps, policy_resolution, cost_grid);
  const Eigen::VectorXd& u = problem.utilities();
  GridMaxMin out{-kInf, {}};
  for_each_composition(problem.num_actions(), steps, [&](const std::vector<long>& counts) {
    double value = 0.0;
    for (size_t x = 0; x < counts.size(); ++x) {
      const Eigen::Index xi = static_cast<Eigen::Index>(x);
      value += static_cast<double>(counts[x]) * policy_resolution * u[xi] +
               table.minima(xi, counts[x]);
    }
    if (value > out.value) {
      out.value = value;
      out.best_counts = counts;
    }
  });
  return out;
}

}  // namespace

OracleReport grid_max_free_energy(const DecisionProblem& problem, double resolution) {
  const Eigen::Index n = problem.num_actions();
  if (n > 4)
    throw BudgetExceeded("grid_max_free_energy: capped at 4 actions");
  const long steps = resolution_steps(resolution);
  if (composition_count(steps, n) > static_cast<double>(kGridBudget))
    throw BudgetExceeded("grid_max_free_energy: policy grid exceeds " +
                         std::to_string(kGridBudget) + " points");

  const double ce = certainty_equivalent(problem);
  const Eigen::VectorXd& u = problem.utilities();
  const double beta = problem.beta();

  double min_prior = 1.0;
  for (Eigen::Index x = 0; x < n; ++x)
    if (problem.prior()[x] > 0.0) min_prior = std::min(min_prior, problem.prior()[x]);
  const double max_abs_u = u.size() == 0 ? 0.0 : u.cwiseAbs().maxCoeff();
  const double lipschitz =
      max_abs_u + (beta == 0.0 ? 0.0 : (1.0 + std::abs(std::log(min_prior))) / std::abs(beta));
  const double certificate = lipschitz * static_cast<double>(n) * resolution;

  if (beta == 0.0) {
    // F is defined only at the prior when the information term is a hard
    // constraint; the grid maximum is the prior's expected utility.
    const double best = problem.prior().weights().dot(u);
    return OracleReport{best, problem.prior().as_policy(), ce - best, resolution, certificate};
  }

  double best = -kInf;
  std::vector<long> best_counts;
  for_each_composition(n, steps, [&](const std::vector<long>& counts) {
    double mean_u = 0.0;
    double kl = 0.0;
    for (size_t x = 0; x < counts.size(); ++x) {
      if (counts[x] == 0) continue;
      const Eigen::Index xi = static_cast<Eigen::Index>(x);
      const double mass = static_cast<double>(counts[x]) * resolution;
      if (problem.prior()[xi] == 0.0) {
        kl = kInf;  // outside the prior's support; not in F's domain
        break;
      }
      mean_u += mass * u[xi];
      kl += mass * std::log(mass / problem.prior()[xi]);
    }
    if (kl == kInf) return;
    const double value = mean_u - std::max(kl, 0.0) / beta;
    if (value > best) {
      best = value;
      best_counts = counts;
    }
  });

  if (best_counts.empty())
    throw EmptySupport("grid_max_free_energy: no grid policy lies in the prior's support");
  return OracleReport{best, policy_from_counts(best_counts, resolution), ce - best, resolution,
                      certificate};
}

OracleReport minimax_grid(const DecisionProblem& problem, double policy_resolution,
                          const Grid1D& cost_grid) {
  const GridMaxMin inner = dual_grid_max_min(problem, policy_resolution, cost_grid);
  const double beta = problem.beta();
  const double prediction = certainty_equivalent(problem) + (std::log(beta) + 1.0) / beta;
  const Eigen::VectorXd& u = problem.utilities();
  const double max_abs_u = u.cwiseAbs().maxCoeff();
  const double policy_term = (max_abs_u + std::max(std::abs(cost_grid.lo), std::abs(cost_grid.hi))) *
                             static_cast<double>(problem.num_actions()) * policy_resolution;
  const double cost_term = 3.0 * static_cast<double>(problem.num_actions()) * cost_grid.spacing();
  return OracleReport{inner.value, policy_from_counts(inner.best_counts, policy_resolution),
                      prediction - inner.value, policy_resolution, policy_term + cost_term};
}

ExchangeReport saddle_exchange_check(const DecisionProblem& problem, double policy_resolution,
                                     const Grid1D& cost_grid) {
  const double max_min = dual_grid_max_min(problem, policy_resolution, cost_grid).value;

  // min over the joint cost grid of max_x(U−C) + Σ p₀ e^{βC}. For a level v
  // of the max term, the pointwise-smallest grid vector with U−C ≤ v
  // dominates every other feasible one (the penalty grows in each
  // coordinate), so sweeping v over {U(x) − c_i} visits a minimizer.
  const Eigen::VectorXd& u = problem.utilities();
  const Eigen::Index n = problem.num_actions();
  const double h = cost_grid.spacing();
  std::vector<double> exp_grid(static_cast<size_t>(cost_grid.points));
  for (int i = 0; i < cost_grid.points; ++i)
    exp_grid[static_cast<size_t>(i)] = std::exp(problem.beta() * cost_grid.point(i));

  double min_max = kInf;
  for (Eigen::Index cand_x = 0; cand_x < n; ++cand_x) {
    for (int i = 0; i < cost_grid.points; ++i) {
      const double v = u[cand_x] - cost_grid.point(i);
      double max_term = -kInf;
      double penalty = 0.0;
      bool feasible = true;
      for (Eigen::Index x = 0; x < n; ++x) {
        const double target = u[x] - v;  // C(x) must be ≥ this
        int idx;
        if (target <= cost_grid.lo) {
          idx = 0;
        } else {
          idx = static_cast<int>(std::ceil((target - cost_grid.lo) / h - 1e-9));
          if (idx >= cost_grid.points) {
            feasible = false;
            break;
          }
        }
        max_term = std::max(max_term, u[x] - cost_grid.point(idx));
        penalty += problem.prior()[x] * exp_grid[static_cast<size_t>(idx)];
      }
      if (!feasible) continue;
      min_max = std::min(min_max, max_term + penalty);
    }
  }

  return ExchangeReport{max_min, min_max, std::abs(max_min - min_max),
                        10.0 * (policy_resolution + h)};
}

}  // namespace feg
