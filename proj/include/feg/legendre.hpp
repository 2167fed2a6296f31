#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "feg/simplex.hpp"

namespace feg {

/// Uniform 1-D grid with `points` nodes from lo to hi inclusive.
struct Grid1D {
  Grid1D(double lo, double hi, int points);

  double lo;
  double hi;
  int points;

  double spacing() const { return (hi - lo) / static_cast<double>(points - 1); }
  double point(int i) const { return lo + spacing() * static_cast<double>(i); }
};

/// Grid for conjugating scalar functions; covers the analytic maximizers of
/// the desk-scale examples at 2e-3 spacing.
Grid1D function_grid();

/// Grid for one cost coordinate; costs for beta near 1 are negative or
/// modest, hence the asymmetric range.
Grid1D cost_grid();

/// Convex conjugate of an affine function a·x + b: the slope query must hit
/// a exactly, anything else has an unbounded supremum.
double conjugate_affine(double a, double b, double s);

/// Convex conjugate of (1/alpha)|x|^alpha: (1/alpha')|s|^{alpha'} with
/// 1/alpha + 1/alpha' = 1. Throws InvalidExponent unless alpha > 1.
double conjugate_power(double alpha, double s);

/// Convex conjugate of e^x: s log s − s for s > 0, 0 at s = 0, +inf for
/// s < 0.
double conjugate_exp(double s);

/// Outcome of a grid supremum. `boundary` means the maximum sat on an
/// endpoint, so the true supremum may lie outside the grid (or be +inf);
/// the value is then untrusted.
struct ConjugateResult {
  double value;
  double maximizer;
  bool boundary;
};

/// max over grid of s·x − f(x), ties to the lowest index. Throws
/// InvalidFunction when f is non-finite at a grid point.
ConjugateResult numeric_conjugate(const std::function<double(double)>& f, const Grid1D& grid,
                                  double s);

/// Result of the coordinate-wise grid minimization below. A boundary
/// attainment on any coordinate is a warning, not an error: the value is
/// still returned with the offending coordinates listed.
struct KlConjugateResult {
  double value;
  Eigen::VectorXd minimizers;
  bool boundary_warning;
  std::vector<int> boundary_coordinates;
};

/// Independent numeric route to −(1/β)KL(p‖p₀): minimizes
/// −p(x)C(x) + p₀(x)e^{βC(x)} over the grid per coordinate, sums the
/// minima, and adds the constant −(1/β)(log β + 1) once. The constant sits
/// outside the sum: substituting the optimal C back balances the identity
/// only with a single copy per problem. Minimizers converge to
/// (1/β)log(p(x)/(β p₀(x))) as the grid refines.
KlConjugateResult numeric_kl_conjugate(const Policy& p, const Prior& p0, double beta,
                                       const Grid1D& cost_grid);

}  // namespace feg
