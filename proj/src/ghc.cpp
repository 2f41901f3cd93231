#include "dyad/ghc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "dyad/error.hpp"

namespace dyad {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

// ---------------------------------------------------------------------------
// TargetWeights

TargetWeights::TargetWeights(const Eigen::VectorXd& weights) {
  log2_.resize(weights.size());
  for (Index i = 0; i < weights.size(); ++i) {
    require(std::isfinite(weights(i)) && weights(i) >= 0.0,
            "target weight " + std::to_string(i) + " is negative or not finite");
    log2_(i) = weights(i) == 0.0 ? kNegInf : std::log2(weights(i));
  }
  validate();
}

TargetWeights TargetWeights::from_log2(Eigen::VectorXd log2_weights) {
  TargetWeights x;
  x.log2_ = std::move(log2_weights);
  for (Index i = 0; i < x.log2_.size(); ++i)
    require(!std::isnan(x.log2_(i)) && x.log2_(i) != std::numeric_limits<double>::infinity(),
            "log2 target weight " + std::to_string(i) + " is not a finite value or -inf");
  x.validate();
  return x;
}

void TargetWeights::validate() const {
  require(log2_.size() >= 1, "target weights must not be empty");
  require(support_size() > 0, "target weights are all zero");
}

bool TargetWeights::is_zero(Index i) const { return log2_(i) == kNegInf; }

Index TargetWeights::support_size() const {
  Index n = 0;
  for (Index i = 0; i < size(); ++i) n += is_zero(i) ? 0 : 1;
  return n;
}

double TargetWeights::log2_total() const {
  const double top = log2_.maxCoeff();
  double sum = 0.0;
  for (Index i = 0; i < size(); ++i)
    if (!is_zero(i)) sum += std::exp2(log2_(i) - top);
  return top + std::log2(sum);
}

Eigen::VectorXd TargetWeights::normalized() const {
  const double total = log2_total();
  Eigen::VectorXd p(size());
  for (Index i = 0; i < size(); ++i) p(i) = is_zero(i) ? 0.0 : std::exp2(log2_(i) - total);
  return p;
}

double kl_to_normalized(const DyadicPmf& d, const TargetWeights& x) {
  require(d.size() == x.size(), "kl_to_normalized: dimension mismatch");
  const double total = x.log2_total();
  double sum = 0.0;
  for (Index i = 0; i < d.size(); ++i) {
    if (d.is_zero(i)) continue;
    if (x.is_zero(i)) return std::numeric_limits<double>::infinity();
    sum += d.prob(i) * (-static_cast<double>(d.length(i)) - (x.log2_weights()(i) - total));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// ghc

namespace {

struct HeapEntry {
  double log2_weight;
  Index key;  // smallest original symbol index in the subtree
  int node;
};

struct Greater {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.log2_weight != b.log2_weight) return a.log2_weight > b.log2_weight;
    return a.key > b.key;
  }
};

}  // namespace

DyadicPmf ghc(const TargetWeights& x) {
  const Index m = x.size();
  std::vector<int> lengths(static_cast<std::size_t>(m), DyadicPmf::kInfinite);

  // Nodes 0..m-1 are leaves; merged nodes are appended.
  std::vector<int> parent(static_cast<std::size_t>(m), -1);
  std::vector<char> dropped(static_cast<std::size_t>(m), 0);

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, Greater> heap;
  for (Index i = 0; i < m; ++i)
    if (!x.is_zero(i)) heap.push({x.log2_weights()(i), i, static_cast<int>(i)});

  while (heap.size() > 1) {
    const HeapEntry small = heap.top();
    heap.pop();
    const HeapEntry large = heap.top();
    heap.pop();
    if (large.log2_weight >= small.log2_weight + 2.0) {
      dropped[static_cast<std::size_t>(small.node)] = 1;
      heap.push(large);
      continue;
    }
    const int merged = static_cast<int>(parent.size());
    parent.push_back(-1);
    dropped.push_back(0);
    parent[static_cast<std::size_t>(small.node)] = merged;
    parent[static_cast<std::size_t>(large.node)] = merged;
    heap.push({1.0 + 0.5 * (small.log2_weight + large.log2_weight),
               std::min(small.key, large.key), merged});
  }

  for (Index i = 0; i < m; ++i) {
    if (x.is_zero(i)) continue;
    int depth = 0;
    bool alive = true;
    for (int node = static_cast<int>(i); node != -1; node = parent[static_cast<std::size_t>(node)]) {
      if (dropped[static_cast<std::size_t>(node)]) {
        alive = false;
        break;
      }
      if (parent[static_cast<std::size_t>(node)] != -1) ++depth;
    }
    if (alive) lengths[static_cast<std::size_t>(i)] = depth;
  }
  return DyadicPmf(std::move(lengths));
}

// ---------------------------------------------------------------------------
// brute force

namespace {

struct Search {
  const TargetWeights& x;
  std::vector<Index> order;  // support indices, heaviest first
  int max_len;
  long long full;            // 2^max_len

  std::vector<int> current;
  std::vector<int> best_lengths;
  double best = std::numeric_limits<double>::infinity();

  // Objective up to the constant log2(total): sum d_i (log2 d_i - log2 x_i).
  double evaluate() const {
    double sum = 0.0;
    for (std::size_t j = 0; j < current.size(); ++j) {
      const double d = std::ldexp(1.0, -current[j]);
      sum += d * (-static_cast<double>(current[j]) - x.log2_weights()(order[j]));
    }
    return sum;
  }

  void consider() {
    const double value = evaluate();
    if (value < best) {
      best = value;
      best_lengths.assign(static_cast<std::size_t>(x.size()), DyadicPmf::kInfinite);
      for (std::size_t j = 0; j < current.size(); ++j)
        best_lengths[static_cast<std::size_t>(order[j])] = current[j];
    }
  }

  // Non-decreasing lengths; `used` counts Kraft mass in units of 2^-max_len.
  void extend(int min_len, long long used) {
    if (used == full) {
      consider();
      return;
    }
    if (current.size() == order.size()) return;
    const auto slots_left = static_cast<long long>(order.size() - current.size());
    for (int l = min_len; l <= max_len; ++l) {
      const long long unit = 1LL << (max_len - l);
      if (used + unit > full) continue;
      // Remaining symbols can each add at most `unit`.
      if (used + slots_left * unit < full) break;
      current.push_back(l);
      extend(l, used + unit);
      current.pop_back();
    }
  }
};

}  // namespace

DyadicPmf brute_force_dyadic(const TargetWeights& x, int max_len) {
  require(max_len >= 0, "max_len must be non-negative");
  if (x.support_size() > kBruteForceMaxSupport || max_len > kBruteForceMaxLength)
    fail(ErrorKind::SizeCap, "brute_force_dyadic: instance too large (support " +
                                 std::to_string(x.support_size()) + ", max_len " +
                                 std::to_string(max_len) + ")");

  Search s{x, {}, max_len, 1LL << max_len, {}, {}, std::numeric_limits<double>::infinity()};
  for (Index i = 0; i < x.size(); ++i)
    if (!x.is_zero(i)) s.order.push_back(i);
  // Shortest codewords go to the heaviest symbols (rearrangement inequality).
  std::stable_sort(s.order.begin(), s.order.end(), [&](Index a, Index b) {
    return x.log2_weights()(a) > x.log2_weights()(b);
  });
  s.extend(0, 0);
  return DyadicPmf(std::move(s.best_lengths));
}

}  // namespace dyad
