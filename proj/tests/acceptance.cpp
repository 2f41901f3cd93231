// Acceptance checks. `acceptance` runs every criterion, `acceptance N` runs
// one. Each prints a single PASS/FAIL line; the exit status is the number of
// failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "dyad/dyad.hpp"
#include "oracles.hpp"

using namespace dyad;

namespace {

const std::string kData = DYAD_DATA_DIR;

// Tolerances.
constexpr double kCostTol = 1e-6;        // criterion 2
constexpr double kPStarTol = 5e-4;       // criterion 3, per component
constexpr double kDistanceTol = 1e-4;    // criteria 3 and 6
constexpr double kGhcTol = 1e-12;        // criterion 5
constexpr double kIdentityTol = 1e-10;   // criterion 7
constexpr double kSlopeTol = 1e-4;       // criterion 8
constexpr double kMarginalTol = 3e-3;    // criterion 11

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

const Pmf& target() {
  static const Pmf t = load_pmf(kData + "/facade_target.json");
  return t;
}

const CostVector& costs() {
  static const CostVector w = load_costs(kData + "/facade_costs.json");
  return w;
}

CcGhcResult match_k3(const std::string& budget) {
  return ccghc(kronecker_pmf(target(), 3), kronecker_cost(costs(), 3), parse_rational(budget) * 3);
}

std::string block_name(Index b) {
  std::string s;
  for (Index digit : block_digits(b, 3, 3)) s += "lrm"[digit];
  return s;
}

Outcome table_reproduction() {
  const auto start = Clock::now();
  const CcGhcResult r = match_k3("0.2063");
  const double elapsed = seconds_since(start);

  std::map<int, int> multiset;
  int mismatches = 0;
  for (Index b = 0; b < 27; ++b) {
    ++multiset[r.d.length(b)];
    if (r.d.length(b) != oracle::reference_matcher_lengths().at(block_name(b))) ++mismatches;
  }
  const bool lengths_ok = multiset == std::map<int, int>{{4, 9}, {5, 11}, {6, 5}, {7, 2}};
  return {lengths_ok && mismatches == 0 && elapsed < 1.0,
          "multiset " + std::string(lengths_ok ? "matches" : "differs") + ", " +
              std::to_string(mismatches) + " per-triple mismatches, " + fmt(elapsed, 3) + " s"};
}

Outcome feasibility_k3() {
  const CcGhcResult r = match_k3("0.2063");
  const Rational oracle_cost = oracle::facade_block_cost(oracle::reference_matcher_lengths()) / 3;
  const Rational cost = r.exact_cost / 3;
  const double c = to_double(cost);
  const bool ok = cost == oracle_cost && std::abs(c - 0.206068) <= kCostTol &&
                  cost <= parse_rational("0.2063");
  return {ok, "cost/symbol " + to_string(cost) + " = " + fmt(c, 9) + ", oracle " +
                  to_string(oracle_cost)};
}

Outcome simplex_optimum() {
  const TiltedSolution s = solve_simplex(target(), costs(), 0.2063);
  const double expected[] = {0.3988, 0.3988, 0.2023};
  double worst = 0.0;
  for (Index i = 0; i < 3; ++i) worst = std::max(worst, std::abs(s.p_star[i] - expected[i]));
  const bool ok = worst <= kPStarTol && std::abs(s.D - 0.06066) <= kDistanceTol;
  return {ok, "p* = (" + fmt(s.p_star[0]) + ", " + fmt(s.p_star[1]) + ", " + fmt(s.p_star[2]) +
                  "), max deviation " + fmt(worst, 3) + ", D = " + fmt(s.D, 7) + ", lambda = " +
                  fmt(s.lambda, 9)};
}

Outcome stricter_constraint() {
  const CcGhcResult base = match_k3("0.2063");
  const CcGhcResult strict = match_k3("0.206");
  const Rational cost = strict.exact_cost / 3;
  const bool ok = cost <= parse_rational("0.206") && strict.kl / 3 > base.kl / 3;
  return {ok, "cost/symbol " + fmt(to_double(cost), 7) + ", kl/symbol " + fmt(strict.kl / 3, 7) +
                  " vs " + fmt(base.kl / 3, 7)};
}

Outcome ghc_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const auto x = oracle::random_weights(rng, m, 0.1);
    const TargetWeights tw(Eigen::Map<const Eigen::VectorXd>(x.data(), m).eval());
    const double a = kl_to_normalized(ghc(tw), tw);
    const double b = kl_to_normalized(brute_force_dyadic(tw, m), tw);
    worst = std::max(worst, std::abs(a - b));
  }
  const double elapsed = seconds_since(start);
  return {worst <= kGhcTol && elapsed < 30.0,
          "500 targets, max |kl difference| " + fmt(worst, 3) + ", " + fmt(elapsed, 3) + " s"};
}

Outcome convergence_trend() {
  const auto start = Clock::now();
  const Rational S = parse_rational("0.2063");
  const auto sweep = convergence_sweep(target(), costs(), S, 8);
  const double elapsed = seconds_since(start);

  bool feasible = true;
  for (const auto& r : sweep) feasible = feasible && r.exact_cost_per_symbol <= S;
  const double g1 = sweep[0].gap, g3 = sweep[2].gap, g8 = sweep[7].gap;
  const bool trend = g8 < g3 && g3 < g1;
  const bool value = std::abs(g3 - 0.00868) <= kDistanceTol;
  std::string gaps;
  for (const auto& r : sweep) gaps += (gaps.empty() ? "" : " ") + fmt(r.gap, 5);
  return {feasible && trend && value && elapsed < 120.0,
          std::string(feasible ? "all feasible" : "INFEASIBLE record") + ", gaps k=1..8: " + gaps +
              (trend ? "" : " (gap(8) < gap(3) < gap(1) violated)") + ", " + fmt(elapsed, 3) + " s"};
}

Outcome geometry_identity() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Pmf p(oracle::random_pmf(rng, 3));
    worst = std::max(worst, geometry_identity_residual(p, target(), costs(), 0.2063));
  }
  return {worst < kIdentityTol, "100 pmfs, max residual " + fmt(worst, 3)};
}

Outcome convexity() {
  const auto grid = linear_grid(0.181, 0.223, 50);
  const auto curve = distance_cost_curve(target(), costs(), grid);
  double min_second = INFINITY;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i)
    min_second = std::min(min_second, curve[i + 1].D - 2 * curve[i].D + curve[i - 1].D);
  // -dD/dE at every grid point by a central difference
  constexpr double h = 1e-6;
  double worst = 0.0;
  bool bracketed = true;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double E = curve[i].E;
    const double slope = -(solve_simplex(target(), costs(), E + h).D -
                           solve_simplex(target(), costs(), E - h).D) / (2 * h);
    worst = std::max(worst, std::abs(slope - curve[i].lambda));
    if (i + 1 < curve.size()) {
      const double secant = -(curve[i + 1].D - curve[i].D) / (curve[i + 1].E - curve[i].E);
      bracketed = bracketed && curve[i + 1].lambda < secant && secant < curve[i].lambda;
    }
  }
  return {min_second > 0.0 && worst <= kSlopeTol && bracketed,
          "min second difference " + fmt(min_second, 3) + ", max |lambda + dD/dE| " + fmt(worst, 3) +
              (bracketed ? ", grid secants bracketed" : ", grid secants NOT bracketed")};
}

Outcome kraft_fixtures() {
  const Rational k1 = verify_kraft(load_code(kData + "/table1_huffman.code"));
  const Rational k2 = verify_kraft(load_code(kData + "/table2_matcher.code"));
  return {k1 == 1 && k2 == 1, "source " + to_string(k1) + ", matcher " + to_string(k2)};
}

Outcome round_trip() {
  const PrefixCode source = load_code(kData + "/table1_huffman.code");
  const PrefixCode matcher = load_code(kData + "/table2_matcher.code");
  const std::string text = "shannon the fu";
  const EncodeResult r = match_bits(compress_text(text, source), matcher);
  const std::string back = decode_symbols(r.symbols, matcher, source, r.bit_count);
  return {back == text, std::to_string(r.bit_count) + " bits, " + std::to_string(r.symbols.size()) +
                            " slats, decoded \"" + back + "\""};
}

Outcome pipeline_totality() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto bits_of = [&](std::size_t n) {
    std::string b(n, '0');
    for (auto& c : b) c = (rng() & 1) ? '1' : '0';
    return b;
  };

  // random ccghc matchers, 50 strings each
  int strings = 0, failures = 0;
  while (strings < 10000) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % 3);
    const Pmf t(oracle::random_pmf(rng, m));
    std::vector<Rational> wr;
    for (int i = 0; i < m; ++i) wr.push_back(Rational(1 + static_cast<int>(rng() % 50), 100));
    const CostVector w(wr);
    const double lo = w.min(), hi = average_cost(t, w);
    const Rational S = std::max(*std::min_element(wr.begin(), wr.end()),
                                to_rational(lo + (hi - lo) * (0.1 + 0.9 * u(rng))));
    const CcGhcResult r = ccghc(kronecker_pmf(t, k), kronecker_cost(w, k), S * k);
    if (r.d.max_length() == 0) continue;
    const SymbolAlphabet base = SymbolAlphabet::from_chars(std::string("abcd").substr(0, static_cast<std::size_t>(m)));
    const PrefixCode code = canonical_code(r.d, block_alphabet(base, k));
    for (int rep = 0; rep < 50; ++rep, ++strings) {
      const std::string bits = bits_of(rng() % 256);
      try {
        const EncodeResult e = match_bits(bits, code);
        if (unmatch_symbols(e.symbols, code, e.bit_count) != bits) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }

  const CcGhcResult d3 = match_k3("0.2063");
  const PrefixCode matcher = canonical_code(d3.d, block_alphabet(SymbolAlphabet::from_chars("lrm"), 3));
  const EncodeResult e = match_bits(bits_of(1000000), matcher);
  const FrequencyStats s = facade_stats(e.symbols, costs(), SymbolAlphabet::from_chars("lrm"));
  const double share = s.effective_freqs(2);
  return {failures == 0 && std::abs(share - 0.2005) <= kMarginalTol,
          std::to_string(strings) + " strings, " + std::to_string(failures) +
              " failures, 'm' share " + fmt(share, 6) + " over " + std::to_string(e.symbols.size()) +
              " symbols"};
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Outcome()>>> all = {
      {1, {"matcher lengths at S=0.2063, k=3", table_reproduction}},
      {2, {"k=3 cost feasibility", feasibility_k3}},
      {3, {"relaxed optimum at E=0.2063", simplex_optimum}},
      {4, {"stricter budget S'=0.206", stricter_constraint}},
      {5, {"ghc vs exhaustive search", ghc_oracle}},
      {6, {"blocklength convergence k=1..8", convergence_trend}},
      {7, {"geometry identity", geometry_identity}},
      {8, {"convexity and slope of D(E)", convexity}},
      {9, {"Kraft sums of shipped tables", kraft_fixtures}},
      {10, {"shannon the fu round trip", round_trip}},
      {11, {"pipeline totality and marginal", pipeline_totality}},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  } else {
    for (const auto& [id, _] : criteria()) ids.push_back(id);
  }

  int failures = 0;
  for (int id : ids) {
    const auto it = criteria().find(id);
    if (it == criteria().end()) {
      std::printf("criterion %d: unknown\n", id);
      ++failures;
      continue;
    }
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %2d %s: %s (%s)\n", id, o.pass ? "PASS" : "FAIL", it->second.first.c_str(),
                o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  return failures;
}
