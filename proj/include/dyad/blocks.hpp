#pragma once

#include <vector>

#include "dyad/ccghc.hpp"
#include "dyad/pmf.hpp"
#include "dyad/simplex.hpp"

namespace dyad {

/// Normalized operating point of d_k = ccghc(t^k, v_k, k S).
struct ConvergenceRecord {
  int k = 0;
  double kl_per_symbol = 0.0;    // kl(d_k || t^k) / k, bits
  double cost_per_symbol = 0.0;  // v_k^T d_k / k
  Rational exact_cost_per_symbol;
  double lambda_star = 0.0;
  double gap = 0.0;  // kl_per_symbol - D(S)
  bool feasible = false;  // exact_cost_per_symbol <= S
};

/// Runs ccghc at blocklength k and normalizes. `distance_at_budget` is D(S).
ConvergenceRecord block_record(const Pmf& t, const CostVector& w, const Rational& budget, int k,
                               double distance_at_budget, const CcGhcOptions& options = {},
                               std::size_t cap = kDefaultSizeCap);

/// One record per k = 1..k_max.
std::vector<ConvergenceRecord> convergence_sweep(const Pmf& t, const CostVector& w,
                                                 const Rational& budget, int k_max,
                                                 const CcGhcOptions& options = {},
                                                 std::size_t cap = kDefaultSizeCap);

/// D(S) for the sweep gap; zero when the budget does not bind.
double relaxed_distance(const Pmf& t, const CostVector& w, double budget);

/// Chord of the distance-cost curve from Q* = (E*, D(E*)) to
/// Q' = (E', D(E*) + epsilon) with E' < E*.
struct ChordConstruction {
  double E_star = 0.0;
  double D_star = 0.0;
  double lambda_star = 0.0;  // tangent slope magnitude at Q*
  double E_prime = 0.0;
  double D_prime = 0.0;
  double E_mid = 0.0;  // (E' + E*) / 2
  double xi = 0.0;     // chord slope magnitude
};

/// Finds E' by bisection on D(E) = D(E*) + epsilon. Throws
/// Error(InvalidArgument) when epsilon <= 0 or D(E*) + epsilon is not below
/// the limit of D at the minimum cost.
ChordConstruction chord(const Pmf& t, const CostVector& w, double E_star, double epsilon);

struct AchievabilityReport {
  bool dominates = false;
  ConvergenceRecord record;  // ccghc at blocklength k
  ChordConstruction chord;
  OperatingPoint chord_point;  // Ghc(t^k o 2^(-xi v_k)), per symbol
  bool chord_point_feasible = false;
  bool chord_point_in_segment = false;  // meets both kl/k <= D*+eps and cost/k <= E*
};

/// Compares ccghc(t^k, v_k, kS) against the chord-slope point
/// Ghc(t^k o 2^(-xi v_k)). ccghc dominates when its point is feasible and,
/// whenever the chord-slope point is feasible too, its KL is no larger.
AchievabilityReport achievability_check(const Pmf& t, const CostVector& w, const Rational& budget,
                                        double epsilon, int k, const CcGhcOptions& options = {},
                                        std::size_t cap = kDefaultSizeCap);

/// True when result.kl <= kl of every feasible probe in its trace.
bool dominates_trace(const CcGhcResult& result, double tolerance = 1e-12);

}  // namespace dyad
