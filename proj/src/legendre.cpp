#include "feg/legendre.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace feg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Grid1D::Grid1D(double lo_, double hi_, int points_) : lo(lo_), hi(hi_), points(points_) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw InvalidResolution("Grid1D: need finite lo < hi");
  if (points < 2) throw InvalidResolution("Grid1D: need at least two points");
}

Grid1D function_grid() { return Grid1D(-10.0, 10.0, 10001); }

Grid1D cost_grid() { return Grid1D(-20.0, 5.0, 25001); }

double conjugate_affine(double a, double b, double s) { return s == a ? -b : kInf; }

double conjugate_power(double alpha, double s) {
  if (!(alpha > 1.0)) throw InvalidExponent("conjugate_power: alpha must exceed 1");
  const double dual = alpha / (alpha - 1.0);
  return std::pow(std::abs(s), dual) / dual;
}

double conjugate_exp(double s) {
  if (s < 0.0) return kInf;
  if (s == 0.0) return 0.0;
  return s * std::log(s) - s;
}

ConjugateResult numeric_conjugate(const std::function<double(double)>& f, const Grid1D& grid,
                                  double s) {
  double best = -kInf;
  int best_i = 0;
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.point(i);
    const double fx = f(x);
    if (!std::isfinite(fx))
      throw InvalidFunction("numeric_conjugate: f is not finite at x = " + std::to_string(x));
    const double v = s * x - fx;
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  return ConjugateResult{best, grid.point(best_i),
                         best_i == 0 || best_i == grid.points - 1};
}

KlConjugateResult numeric_kl_conjugate(const Policy& p, const Prior& p0, double beta,
                                       const Grid1D& cost_grid) {
  if (!(beta > 0.0)) throw InvalidBeta("numeric_kl_conjugate: beta must be positive");
  if (!p0.strictly_positive())
    throw InvalidDistribution("numeric_kl_conjugate: prior must be strictly positive");
  if (p.size() != p0.size())
    throw DimensionMismatch("numeric_kl_conjugate: policy and prior sizes disagree");

  KlConjugateResult out;
  out.minimizers.resize(p.size());
  out.boundary_warning = false;
  double total = 0.0;
  for (Eigen::Index x = 0; x < p.size(); ++x) {
    double best = kInf;
    int best_i = 0;
    for (int i = 0; i < cost_grid.points; ++i) {
      const double c = cost_grid.point(i);
      const double v = -p[x] * c + p0[x] * std::exp(beta * c);
      if (v < best) {
        best = v;
        best_i = i;
      }
    }
    total += best;
    out.minimizers[x] = cost_grid.point(best_i);
    if (best_i == 0 || best_i == cost_grid.points - 1) {
      out.boundary_warning = true;
      out.boundary_coordinates.push_back(static_cast<int>(x));
    }
  }
  out.value = total - (std::log(beta) + 1.0) / beta;
  return out;
}

}  // namespace feg
