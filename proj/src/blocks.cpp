#include "dyad/blocks.hpp"

#include <cmath>
#include <string>

#include "dyad/error.hpp"

namespace dyad {

double relaxed_distance(const Pmf& t, const CostVector& w, double budget) {
  if (budget >= average_cost(t, w)) return 0.0;
  return solve_simplex(t, w, budget).D;
}

ConvergenceRecord block_record(const Pmf& t, const CostVector& w, const Rational& budget, int k,
                               double distance_at_budget, const CcGhcOptions& options,
                               std::size_t cap) {
  const Pmf tk = kronecker_pmf(t, k, cap);
  const CostVector vk = kronecker_cost(w, k, cap);
  const CcGhcResult r = ccghc(tk, vk, budget * k, options);

  ConvergenceRecord rec;
  rec.k = k;
  rec.kl_per_symbol = r.kl / k;
  rec.exact_cost_per_symbol = r.exact_cost / k;
  rec.cost_per_symbol = to_double(rec.exact_cost_per_symbol);
  rec.lambda_star = r.lambda_star;
  rec.gap = rec.kl_per_symbol - distance_at_budget;
  rec.feasible = rec.exact_cost_per_symbol <= budget;
  return rec;
}

std::vector<ConvergenceRecord> convergence_sweep(const Pmf& t, const CostVector& w,
                                                 const Rational& budget, int k_max,
                                                 const CcGhcOptions& options, std::size_t cap) {
  require(k_max >= 1, "k_max must be positive");
  // Fail on the size cap before doing any work.
  std::size_t blocks = 1;
  for (int k = 0; k < k_max; ++k) {
    if (blocks > cap / static_cast<std::size_t>(t.size()))
      fail(ErrorKind::SizeCap, "sweep up to k=" + std::to_string(k_max) + " exceeds the size cap");
    blocks *= static_cast<std::size_t>(t.size());
  }

  const double D = relaxed_distance(t, w, to_double(budget));
  std::vector<ConvergenceRecord> out;
  out.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) out.push_back(block_record(t, w, budget, k, D, options, cap));
  return out;
}

ChordConstruction chord(const Pmf& t, const CostVector& w, double E_star, double epsilon) {
  require(epsilon > 0.0, "chord: epsilon must be positive");
  const TiltedSolution at = solve_simplex(t, w, E_star);
  const double target = at.D + epsilon;
  const double lo_cost = min_supported_cost(t, w);
  require(target < distance_at_min_cost(t, w),
          "chord: epsilon too large, D(E*) + epsilon is not attained above the minimum cost");

  // D is strictly decreasing on (w_min, w^T t).
  double lo = lo_cost;
  double hi = std::min(E_star, average_cost(t, w));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    if (solve_simplex(t, w, mid).D > target)
      lo = mid;
    else
      hi = mid;
  }

  ChordConstruction c;
  c.E_star = E_star;
  c.D_star = at.D;
  c.lambda_star = at.lambda;
  c.E_prime = 0.5 * (lo + hi);
  c.D_prime = solve_simplex(t, w, c.E_prime).D;
  c.E_mid = 0.5 * (c.E_prime + E_star);
  c.xi = -(c.D_prime - c.D_star) / (c.E_prime - E_star);
  return c;
}

AchievabilityReport achievability_check(const Pmf& t, const CostVector& w, const Rational& budget,
                                        double epsilon, int k, const CcGhcOptions& options,
                                        std::size_t cap) {
  const double S = to_double(budget);
  AchievabilityReport rep;
  rep.chord = chord(t, w, S, epsilon);
  rep.record = block_record(t, w, budget, k, rep.chord.D_star, options, cap);

  const Pmf tk = kronecker_pmf(t, k, cap);
  const CostVector vk = kronecker_cost(w, k, cap);
  const DyadicPmf d_xi = ghc(tilt(tk, vk, rep.chord.xi));
  const Rational cost_xi = vk.exact_average(d_xi) / k;
  rep.chord_point = {to_double(cost_xi), kl_divergence(d_xi, tk) / k};
  rep.chord_point_feasible = cost_xi <= budget;
  rep.chord_point_in_segment =
      rep.chord_point_feasible && rep.chord_point.D <= rep.chord.D_star + epsilon;

  constexpr double kTolerance = 1e-12;
  rep.dominates = rep.record.feasible &&
                  (!rep.chord_point_feasible ||
                   rep.record.kl_per_symbol <= rep.chord_point.D + kTolerance);
  return rep;
}

bool dominates_trace(const CcGhcResult& result, double tolerance) {
  for (const auto& probe : result.trace)
    if (probe.feasible && result.kl > probe.kl + tolerance) return false;
  return true;
}

}  // namespace dyad
