#pragma once

#include <span>
#include <vector>

#include "dyad/pmf.hpp"

namespace dyad {

// The relaxed problem: minimize kl(p || t) over the probability simplex
// subject to w^T p <= E.
//
// Multipliers are in bits: the optimum is p*_i = t_i 2^(-lambda w_i) / Z, and
// lambda = -dD/dE with D measured in bits. This is the same lambda that
// ccghc tilts with.

struct OperatingPoint {
  double E = 0.0;  // average cost
  double D = 0.0;  // KL distance to the target, bits
};

struct TiltedSolution {
  Pmf p_star;
  double lambda = 0.0;
  double E = 0.0;  // achieved cost w^T p*
  double D = 0.0;  // kl(p* || t)

  OperatingPoint point() const { return {E, D}; }
};

struct CurvePoint {
  double E = 0.0;
  double D = 0.0;
  double lambda = 0.0;
};

/// Normalized exponential tilt t_i 2^(-lambda w_i) / Z. Symbols with t_i = 0
/// stay at zero.
Pmf tilted_pmf(const Pmf& t, const CostVector& w, double lambda);

/// f(lambda) = w^T tilted_pmf(t, w, lambda); strictly decreasing unless w is
/// constant on the support of t.
double cost_of_lambda(const Pmf& t, const CostVector& w, double lambda);

/// Smallest cost on the support of t.
double min_supported_cost(const Pmf& t, const CostVector& w);

/// lim D(E) as E -> min_supported_cost: -log2 of the target mass sitting on
/// the cheapest symbols.
double distance_at_min_cost(const Pmf& t, const CostVector& w);

/// Solves the relaxed problem at cost level E.
///
/// For E >= w^T t the constraint is inactive and (t, 0, w^T t, 0) is
/// returned. Otherwise lambda is bisected until |f(lambda) - E| <= 1e-12.
/// Throws Error(Infeasible) for E <= min_supported_cost and
/// Error(InvalidArgument) when w is constant on the support of t.
TiltedSolution solve_simplex(const Pmf& t, const CostVector& w, double E);

/// D(E) and lambda(E) at each grid point.
std::vector<CurvePoint> distance_cost_curve(const Pmf& t, const CostVector& w,
                                            std::span<const double> grid);

/// n equally spaced points from a to b inclusive.
std::vector<double> linear_grid(double a, double b, int n);

/// |kl(p||t) - [D(E*) - lambda (w^T p - E*) + kl(p||p*)]|, with p* the
/// optimum at E*. The identity holds for every p supported where p* is.
/// Throws Error(InvalidArgument) if p puts mass where p* has none.
double geometry_identity_residual(const Pmf& p, const Pmf& t, const CostVector& w,
                                  double E_star);

}  // namespace dyad
