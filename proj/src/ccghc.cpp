#include "dyad/ccghc.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dyad/error.hpp"

namespace dyad {

TargetWeights tilt(const Pmf& t, const CostVector& w, double lambda) {
  require(t.size() == w.size(), "tilt: dimension mismatch");
  Eigen::VectorXd log2_x(t.size());
  for (Index i = 0; i < t.size(); ++i)
    log2_x(i) = t[i] == 0.0 ? -std::numeric_limits<double>::infinity()
                            : std::log2(t[i]) - lambda * w[i];
  return TargetWeights::from_log2(std::move(log2_x));
}

namespace {

struct Evaluator {
  const Pmf& t;
  const CostVector& w;
  const Rational& budget;

  std::pair<DyadicPmf, LambdaProbe> operator()(double lambda) const {
    DyadicPmf d = ghc(tilt(t, w, lambda));
    const Rational cost = w.exact_average(d);
    LambdaProbe probe{lambda, to_double(cost), kl_divergence(d, t), cost <= budget};
    return {std::move(d), probe};
  }
};

CcGhcResult finish(DyadicPmf d, const LambdaProbe& at, const CostVector& w,
                   std::vector<LambdaProbe> trace, int iterations, double lower) {
  CcGhcResult r{std::move(d)};
  r.lambda_star = at.lambda;
  r.exact_cost = w.exact_average(r.d);
  r.cost = at.cost;
  r.kl = at.kl;
  r.iterations = iterations;
  r.bracket = {lower, at.lambda};
  for (const auto& p : trace)
    if (p.feasible && (!r.best_feasible || p.kl < r.best_feasible->kl)) r.best_feasible = p;
  r.trace = std::move(trace);
  return r;
}

}  // namespace

CcGhcResult ccghc(const Pmf& t, const CostVector& w, const Rational& budget,
                  const CcGhcOptions& options) {
  require(t.size() == w.size(), "ccghc: dimension mismatch");
  require(options.eps > 0.0, "ccghc: eps must be positive");

  Rational cheapest;
  bool first = true;
  bool constant = true;
  for (Index i = 0; i < t.size(); ++i) {
    if (t[i] == 0.0) continue;
    const Rational c = w.exact(i);
    if (first) {
      cheapest = c;
      first = false;
    } else {
      constant = constant && c == cheapest;
      if (c < cheapest) cheapest = c;
    }
  }
  if (budget < cheapest)
    fail(ErrorKind::Infeasible, "budget " + to_string(budget) +
                                    " is below the cheapest supported cost " + to_string(cheapest));

  const Evaluator eval{t, w, budget};
  std::vector<LambdaProbe> trace;

  auto [d0, p0] = eval(0.0);
  trace.push_back(p0);
  if (p0.feasible) return finish(std::move(d0), p0, w, std::move(trace), 0, 0.0);
  // With constant costs on the support every pmf costs the same.
  if (constant)
    fail(ErrorKind::Infeasible, "costs are constant on the support and exceed the budget");

  double lower = 0.0;
  double upper = 1.0;
  for (int doublings = 0;; ++doublings) {
    if (doublings > options.max_doublings)
      fail(ErrorKind::NonConvergence, "ccghc: no feasible multiplier found while doubling");
    auto [d, probe] = eval(upper);
    trace.push_back(probe);
    if (probe.feasible) break;
    lower = upper;
    upper *= 2.0;
  }

  int iterations = 0;
  while (upper - lower >= options.eps) {
    if (++iterations > options.max_iterations)
      fail(ErrorKind::NonConvergence, "ccghc: bracket did not shrink below eps in " +
                                          std::to_string(options.max_iterations) + " iterations");
    const double lambda = 0.5 * (lower + upper);
    auto [d, probe] = eval(lambda);
    trace.push_back(probe);
    if (probe.feasible)
      upper = lambda;
    else
      lower = lambda;
  }

  auto [d, at] = eval(upper);
  return finish(std::move(d), at, w, std::move(trace), iterations, lower);
}

CcGhcResult ccghc(const Pmf& t, const CostVector& w, double budget, const CcGhcOptions& options) {
  return ccghc(t, w, to_rational(budget), options);
}

std::vector<LambdaProbe> lambda_staircase(const Pmf& t, const CostVector& w,
                                          std::span<const double> lambdas,
                                          const Rational& budget) {
  require(t.size() == w.size(), "lambda_staircase: dimension mismatch");
  const Evaluator eval{t, w, budget};
  std::vector<LambdaProbe> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) out.push_back(eval(lambda).second);
  return out;
}

}  // namespace dyad
