#include "dyad/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dyad/error.hpp"

namespace dyad {

namespace {

constexpr double kCostTolerance = 1e-12;
constexpr int kMaxBisection = 400;

void check_sizes(const Pmf& t, const CostVector& w) {
  require(t.size() == w.size(), "dimension mismatch between target and costs");
}

bool constant_on_support(const Pmf& t, const CostVector& w) {
  double first = std::numeric_limits<double>::quiet_NaN();
  for (Index i = 0; i < t.size(); ++i) {
    if (t[i] == 0.0) continue;
    if (std::isnan(first))
      first = w[i];
    else if (w[i] != first)
      return false;
  }
  return true;
}

// Unnormalized log2 weights shifted so the largest is 0.
Eigen::VectorXd tilted_weights(const Pmf& t, const CostVector& w, double lambda) {
  Eigen::VectorXd e(t.size());
  double top = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < t.size(); ++i) {
    if (t[i] == 0.0) continue;
    e(i) = std::log2(t[i]) - lambda * w[i];
    top = std::max(top, e(i));
  }
  Eigen::VectorXd x(t.size());
  for (Index i = 0; i < t.size(); ++i) x(i) = t[i] == 0.0 ? 0.0 : std::exp2(e(i) - top);
  return x;
}

}  // namespace

Pmf tilted_pmf(const Pmf& t, const CostVector& w, double lambda) {
  check_sizes(t, w);
  return Pmf::normalized(tilted_weights(t, w, lambda));
}

double cost_of_lambda(const Pmf& t, const CostVector& w, double lambda) {
  check_sizes(t, w);
  const Eigen::VectorXd x = tilted_weights(t, w, lambda);
  return w.values().dot(x) / x.sum();
}

double min_supported_cost(const Pmf& t, const CostVector& w) {
  check_sizes(t, w);
  double lo = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < t.size(); ++i)
    if (t[i] > 0.0) lo = std::min(lo, w[i]);
  return lo;
}

double distance_at_min_cost(const Pmf& t, const CostVector& w) {
  const double lo = min_supported_cost(t, w);
  double mass = 0.0;
  for (Index i = 0; i < t.size(); ++i)
    if (t[i] > 0.0 && w[i] == lo) mass += t[i];
  return -std::log2(mass);
}

TiltedSolution solve_simplex(const Pmf& t, const CostVector& w, double E) {
  check_sizes(t, w);
  require(!constant_on_support(t, w), "solve_simplex: costs are constant on the target support");
  const double lo = min_supported_cost(t, w);
  if (!(E > lo))
    fail(ErrorKind::Infeasible, "solve_simplex: cost level " + std::to_string(E) +
                                    " is not above the minimum cost " + std::to_string(lo));

  const double unconstrained = average_cost(t, w);
  if (E >= unconstrained) return {t, 0.0, unconstrained, 0.0};

  // f is strictly decreasing: find u with f(u) < E, then bisect.
  double lower = 0.0;
  double upper = 1.0;
  while (cost_of_lambda(t, w, upper) >= E) {
    lower = upper;
    upper *= 2.0;
    if (!std::isfinite(upper))
      fail(ErrorKind::NonConvergence, "solve_simplex: multiplier diverged");
  }
  double lambda = 0.5 * (lower + upper);
  for (int it = 0; it < kMaxBisection; ++it) {
    lambda = 0.5 * (lower + upper);
    if (!(lower < lambda && lambda < upper)) break;  // bracket at machine precision
    const double f = cost_of_lambda(t, w, lambda);
    if (std::abs(f - E) <= kCostTolerance) break;
    if (f > E)
      lower = lambda;
    else
      upper = lambda;
  }

  Pmf p = tilted_pmf(t, w, lambda);
  const double achieved = average_cost(p, w);
  const double D = kl_divergence(p, t);
  return {std::move(p), lambda, achieved, D};
}

std::vector<CurvePoint> distance_cost_curve(const Pmf& t, const CostVector& w,
                                            std::span<const double> grid) {
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double E : grid) {
    const TiltedSolution s = solve_simplex(t, w, E);
    out.push_back({E, s.D, s.lambda});
  }
  return out;
}

std::vector<double> linear_grid(double a, double b, int n) {
  require(n >= 2, "a grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return g;
}

double geometry_identity_residual(const Pmf& p, const Pmf& t, const CostVector& w,
                                  double E_star) {
  check_sizes(t, w);
  require(p.size() == t.size(), "geometry_identity_residual: dimension mismatch");
  const TiltedSolution s = solve_simplex(t, w, E_star);
  for (Index i = 0; i < p.size(); ++i)
    require(!(p[i] > 0.0 && s.p_star[i] == 0.0),
            "geometry_identity_residual: p has mass on symbol " + std::to_string(i) +
                " where the optimum has none");
  const double lhs = kl_divergence(p, t);
  const double rhs = s.D - s.lambda * (average_cost(p, w) - E_star) + kl_divergence(p, s.p_star);
  return std::abs(lhs - rhs);
}

}  // namespace dyad
