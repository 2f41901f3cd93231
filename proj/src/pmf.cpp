#include "dyad/pmf.hpp"

#include <algorithm>
#include <string>

#include "dyad/error.hpp"

namespace dyad {

namespace {

void require_same_size(Index a, Index b, const char* what) {
  require(a == b, std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                      std::to_string(b) + ")");
}

std::size_t checked_block_count(Index m, int k, std::size_t cap) {
  require(k >= 1, "blocklength must be positive");
  std::size_t n = 1;
  for (int i = 0; i < k; ++i) {
    if (n > cap / static_cast<std::size_t>(m))
      fail(ErrorKind::SizeCap, "block alphabet " + std::to_string(m) + "^" + std::to_string(k) +
                                   " exceeds the size cap of " + std::to_string(cap));
    n *= static_cast<std::size_t>(m);
  }
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Pmf

Pmf::Pmf(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  require(probs_.size() >= 2, "a pmf needs at least two entries");
  for (Index i = 0; i < probs_.size(); ++i)
    require(std::isfinite(probs_(i)) && probs_(i) >= 0.0,
            "pmf entry " + std::to_string(i) + " is negative or not finite");
  const double sum = probs_.sum();
  require(std::abs(sum - 1.0) <= kSumTolerance,
          "pmf entries sum to " + std::to_string(sum) + ", not 1");
}

Pmf Pmf::uniform(Index m) {
  require(m >= 2, "a pmf needs at least two entries");
  return Pmf(Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m)));
}

Pmf Pmf::normalized(const Eigen::VectorXd& weights) {
  require((weights.array() >= 0.0).all(), "weights must be non-negative");
  const double sum = weights.sum();
  require(sum > 0.0 && std::isfinite(sum), "weights must have a positive finite sum");
  return Pmf(weights / sum);
}

// ---------------------------------------------------------------------------
// DyadicPmf

Rational kraft_sum(std::span<const int> lengths) {
  int longest = -1;
  for (int l : lengths)
    if (l != DyadicPmf::kInfinite) longest = std::max(longest, l);
  if (longest < 0) return Rational(0);
  BigInt numerator = 0;
  for (int l : lengths)
    if (l != DyadicPmf::kInfinite) numerator += BigInt(1) << (longest - l);
  return Rational(numerator, BigInt(1) << longest);
}

DyadicPmf::DyadicPmf(std::vector<int> lengths) : lengths_(std::move(lengths)) {
  require(!lengths_.empty(), "dyadic pmf needs at least one entry");
  for (int l : lengths_) require(l >= 0, "codeword lengths must be non-negative");
  require(kraft_sum(lengths_) == 1, "lengths violate Kraft equality");
}

Rational DyadicPmf::exact_prob(Index i) const {
  return is_zero(i) ? Rational(0) : pow2_neg(length(i));
}

Eigen::VectorXd DyadicPmf::probs() const {
  Eigen::VectorXd p(size());
  for (Index i = 0; i < size(); ++i) p(i) = prob(i);
  return p;
}

int DyadicPmf::max_length() const {
  int longest = 0;
  for (int l : lengths_)
    if (l != kInfinite) longest = std::max(longest, l);
  return longest;
}

// ---------------------------------------------------------------------------
// CostVector

CostVector::CostVector(const std::vector<Rational>& exact) {
  require(!exact.empty(), "cost vector must not be empty");
  BigInt den = 1;
  for (const auto& c : exact) {
    require(c >= 0, "costs must be non-negative");
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c));
  }
  denominator_ = den;
  numerators_.reserve(exact.size());
  for (const auto& c : exact)
    numerators_.push_back(boost::multiprecision::numerator(c) *
                          (den / boost::multiprecision::denominator(c)));
  refresh_values();
}

CostVector::CostVector(const Eigen::VectorXd& values) {
  std::vector<Rational> exact;
  exact.reserve(static_cast<std::size_t>(values.size()));
  for (Index i = 0; i < values.size(); ++i) exact.push_back(to_rational(values(i)));
  *this = CostVector(exact);
}

void CostVector::refresh_values() {
  values_.resize(static_cast<Index>(numerators_.size()));
  for (std::size_t i = 0; i < numerators_.size(); ++i)
    values_(static_cast<Index>(i)) = to_double(Rational(numerators_[i], denominator_));
}

Rational CostVector::exact(Index i) const {
  return Rational(numerators_[static_cast<std::size_t>(i)], denominator_);
}

std::vector<Rational> CostVector::exact() const {
  std::vector<Rational> out;
  out.reserve(numerators_.size());
  for (const auto& n : numerators_) out.emplace_back(n, denominator_);
  return out;
}

bool CostVector::all_equal() const {
  return std::all_of(numerators_.begin(), numerators_.end(),
                     [&](const BigInt& n) { return n == numerators_.front(); });
}

Rational CostVector::exact_average(const DyadicPmf& d) const {
  require_same_size(d.size(), size(), "average_cost");
  const int longest = d.max_length();
  BigInt sum = 0;
  for (Index i = 0; i < d.size(); ++i) {
    if (d.is_zero(i)) continue;
    sum += numerators_[static_cast<std::size_t>(i)] << (longest - d.length(i));
  }
  return Rational(sum, denominator_ << longest);
}

// ---------------------------------------------------------------------------
// Operations

double kl_divergence(const Pmf& p, const Pmf& t) {
  require_same_size(p.size(), t.size(), "kl_divergence");
  return kl_bits(p.probs(), t.probs());
}

double kl_divergence(const DyadicPmf& d, const Pmf& t) {
  require_same_size(d.size(), t.size(), "kl_divergence");
  // log2 d_i = -l_i exactly.
  double sum = 0.0;
  for (Index i = 0; i < d.size(); ++i) {
    if (d.is_zero(i)) continue;
    if (t[i] == 0.0) return std::numeric_limits<double>::infinity();
    sum += d.prob(i) * (-static_cast<double>(d.length(i)) - std::log2(t[i]));
  }
  return sum;
}

double kl_divergence_checked(const DyadicPmf& d, const Pmf& t) {
  const double kl = kl_divergence(d, t);
  require(kl_is_finite(kl), "kl_divergence: d is not absolutely continuous w.r.t. t");
  return kl;
}

double kl_divergence_checked(const Pmf& p, const Pmf& t) {
  const double kl = kl_divergence(p, t);
  require(kl_is_finite(kl), "kl_divergence: p is not absolutely continuous w.r.t. t");
  return kl;
}

double average_cost(const Pmf& p, const CostVector& w) {
  require_same_size(p.size(), w.size(), "average_cost");
  return w.values().dot(p.probs());
}

double average_cost(const DyadicPmf& d, const CostVector& w) {
  require_same_size(d.size(), w.size(), "average_cost");
  return w.values().dot(d.probs());
}

Rational exact_average_cost(const DyadicPmf& d, const CostVector& w) {
  return w.exact_average(d);
}

Pmf kronecker_pmf(const Pmf& t, int k, std::size_t cap) {
  const Index m = t.size();
  const auto n = static_cast<Index>(checked_block_count(m, k, cap));
  Eigen::VectorXd out(n);
  out(0) = 1.0;
  Index filled = 1;
  for (int step = 0; step < k; ++step) {
    // Walk backwards so the prefix being read is not yet overwritten.
    for (Index i = filled - 1; i >= 0; --i) {
      const double prefix = out(i);
      for (Index j = m - 1; j >= 0; --j) out(i * m + j) = prefix * t[j];
    }
    filled *= m;
  }
  // Product entries are exact up to rounding, so renormalize within tolerance.
  return Pmf::normalized(out);
}

CostVector kronecker_cost(const CostVector& w, int k, std::size_t cap) {
  const Index m = w.size();
  const std::size_t n = checked_block_count(m, k, cap);
  CostVector out;
  out.denominator_ = w.denominator_;
  out.numerators_.assign(n, BigInt(0));
  std::size_t filled = 1;
  for (int step = 0; step < k; ++step) {
    for (std::size_t i = filled; i-- > 0;) {
      const BigInt prefix = out.numerators_[i];
      for (Index j = m; j-- > 0;)
        out.numerators_[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
            prefix + w.numerators_[static_cast<std::size_t>(j)];
    }
    filled *= static_cast<std::size_t>(m);
  }
  // Doubles are rounded from the exact sums: permuted blocks get identical values.
  out.refresh_values();
  return out;
}

std::vector<Index> block_digits(Index block, Index m, int k) {
  std::vector<Index> digits(static_cast<std::size_t>(k));
  for (int pos = k - 1; pos >= 0; --pos) {
    digits[static_cast<std::size_t>(pos)] = block % m;
    block /= m;
  }
  return digits;
}

}  // namespace dyad
