#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dyad/ghc.hpp"
#include "dyad/pmf.hpp"

namespace dyad {

/// t o 2^(-lambda w), elementwise, kept in the log2 domain.
TargetWeights tilt(const Pmf& t, const CostVector& w, double lambda);

/// One Ghc evaluation made while searching for the multiplier.
struct LambdaProbe {
  double lambda = 0.0;
  double cost = 0.0;  // w^T d
  double kl = 0.0;    // kl(d || t), bits
  bool feasible = false;  // decided exactly: w^T d <= budget
};

struct CcGhcOptions {
  double eps = 1e-9;
  int max_iterations = 200;
  int max_doublings = 1000;
};

struct CcGhcResult {
  DyadicPmf d;
  double lambda_star = 0.0;
  Rational exact_cost;
  double cost = 0.0;
  double kl = 0.0;
  int iterations = 0;  // bisection steps, excluding bracket doubling
  std::pair<double, double> bracket{0.0, 0.0};
  /// Every Ghc evaluation in order: the lambda = 0 probe, the doubling
  /// phase, then the bisection.
  std::vector<LambdaProbe> trace;
  /// Lowest-KL feasible point seen in the trace. Reported only; `d` is always
  /// the Ghc output at lambda_star.
  std::optional<LambdaProbe> best_feasible;
};

/// Cost constrained geometric Huffman coding.
///
/// Returns Ghc(t o 2^(-lambda* w)) where lambda* is the upper end of a
/// bisection bracket [l, u] that keeps "u feasible, l infeasible". If Ghc(t)
/// already satisfies w^T d <= budget, it is returned with lambda* = 0.
/// Feasibility is always decided in exact rational arithmetic.
///
/// Throws Error(Infeasible) if the budget is below the cheapest cost on the
/// support of t (or, for constant costs, below that constant), and
/// Error(NonConvergence) if the bracket cannot be established or closed.
CcGhcResult ccghc(const Pmf& t, const CostVector& w, const Rational& budget,
                  const CcGhcOptions& options = {});
CcGhcResult ccghc(const Pmf& t, const CostVector& w, double budget,
                  const CcGhcOptions& options = {});

/// Ghc on the tilted target at each lambda of the grid. Costs are
/// non-increasing in lambda; evaluations are independent.
std::vector<LambdaProbe> lambda_staircase(const Pmf& t, const CostVector& w,
                                          std::span<const double> lambdas,
                                          const Rational& budget);

}  // namespace dyad
