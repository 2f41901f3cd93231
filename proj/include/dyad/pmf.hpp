#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "dyad/exact.hpp"

namespace dyad {

using Eigen::Index;

/// Largest block-extended alphabet (m^k) the Kronecker operators will build.
inline constexpr std::size_t kDefaultSizeCap = 10'000'000;

/// Kullback-Leibler distance in bits between two non-negative vectors.
///
/// Terms with p_i = 0 contribute 0. A term with p_i > 0 and q_i = 0 makes the
/// result +infinity; both cases are explicit branches so that neither depends
/// on how log(0) propagates. Works for any scalar type Eigen accepts.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar kl_bits(const Eigen::MatrixBase<DerivedP>& p,
                                  const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  using std::log2;
  Scalar sum(0);
  for (Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p(i);
    if (pi == Scalar(0)) continue;
    const Scalar qi = q(i);
    if (qi == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    sum += pi * log2(pi / qi);
  }
  return sum;
}

/// Probability vector: entries >= 0 summing to 1 within kSumTolerance, size >= 2.
class Pmf {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit Pmf(Eigen::VectorXd probs);

  static Pmf uniform(Index m);
  /// Rescales non-negative weights (not all zero) to sum to one.
  static Pmf normalized(const Eigen::VectorXd& weights);

  const Eigen::VectorXd& probs() const noexcept { return probs_; }
  Index size() const noexcept { return probs_.size(); }
  double operator[](Index i) const { return probs_(i); }

  friend bool operator==(const Pmf& a, const Pmf& b) { return a.probs_ == b.probs_; }

 private:
  Eigen::VectorXd probs_;
};

/// Pmf whose non-zero entries are 2^-length; stored as integer lengths so
/// that Kraft equality is checked without rounding.
class DyadicPmf {
 public:
  /// Length of a symbol that has probability zero.
  static constexpr int kInfinite = std::numeric_limits<int>::max();

  /// Throws if lengths are negative or the finite lengths do not satisfy
  /// sum 2^-l = 1 exactly.
  explicit DyadicPmf(std::vector<int> lengths);

  std::span<const int> lengths() const noexcept { return lengths_; }
  int length(Index i) const { return lengths_[static_cast<std::size_t>(i)]; }
  Index size() const noexcept { return static_cast<Index>(lengths_.size()); }
  bool is_zero(Index i) const { return length(i) == kInfinite; }
  double prob(Index i) const { return is_zero(i) ? 0.0 : std::ldexp(1.0, -length(i)); }
  Rational exact_prob(Index i) const;
  Eigen::VectorXd probs() const;
  int max_length() const;  // over finite lengths

  friend bool operator==(const DyadicPmf&, const DyadicPmf&) = default;

 private:
  std::vector<int> lengths_;
};

/// Sum of 2^-l over finite lengths, exactly.
Rational kraft_sum(std::span<const int> lengths);

/// Per-symbol non-negative costs. Keeps both the double values and the exact
/// rational values (common denominator form) so dyadic averages compare
/// exactly against a budget.
class CostVector {
 public:
  explicit CostVector(const std::vector<Rational>& exact);
  /// Exact value of every double is retained.
  explicit CostVector(const Eigen::VectorXd& values);

  const Eigen::VectorXd& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const { return values_(i); }
  Rational exact(Index i) const;
  std::vector<Rational> exact() const;

  double min() const { return values_.minCoeff(); }
  double max() const { return values_.maxCoeff(); }
  bool all_equal() const;

  /// w^T d computed exactly.
  Rational exact_average(const DyadicPmf& d) const;

  friend CostVector kronecker_cost(const CostVector& w, int k, std::size_t cap);

 private:
  CostVector() = default;
  void refresh_values();

  std::vector<BigInt> numerators_;
  BigInt denominator_{1};
  Eigen::VectorXd values_;
};

/// sum p_i log2(p_i / t_i). Returns +infinity when some p_i > 0 has t_i = 0;
/// test with kl_is_finite or use kl_divergence_checked.
double kl_divergence(const Pmf& p, const Pmf& t);
double kl_divergence(const DyadicPmf& d, const Pmf& t);
/// Same as kl_divergence but throws Error(InvalidArgument) on an
/// absolute-continuity violation.
double kl_divergence_checked(const DyadicPmf& d, const Pmf& t);
double kl_divergence_checked(const Pmf& p, const Pmf& t);
inline bool kl_is_finite(double kl) { return kl != std::numeric_limits<double>::infinity(); }

double average_cost(const Pmf& p, const CostVector& w);
double average_cost(const DyadicPmf& d, const CostVector& w);
Rational exact_average_cost(const DyadicPmf& d, const CostVector& w);

/// k-fold product pmf over blocks of k symbols. Block index order is
/// lexicographic with the first symbol most significant.
Pmf kronecker_pmf(const Pmf& t, int k, std::size_t cap = kDefaultSizeCap);

/// Kronecker sum: entry (i1..ik) is w_i1 + ... + w_ik, same order as kronecker_pmf.
CostVector kronecker_cost(const CostVector& w, int k, std::size_t cap = kDefaultSizeCap);

/// Symbol indices of a block, first symbol first.
std::vector<Index> block_digits(Index block, Index m, int k);

}  // namespace dyad
