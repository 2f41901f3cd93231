#pragma once

#include <Eigen/Core>

#include "dyad/pmf.hpp"

namespace dyad {

/// Non-negative weights, not necessarily normalized, with at least one
/// positive entry. Stored as log2 values (zero weight -> -infinity) so that
/// strongly tilted targets keep their relative sizes.
class TargetWeights {
 public:
  explicit TargetWeights(const Eigen::VectorXd& weights);
  static TargetWeights from_log2(Eigen::VectorXd log2_weights);

  const Eigen::VectorXd& log2_weights() const noexcept { return log2_; }
  Eigen::VectorXd weights() const { return log2_.unaryExpr([](double v) { return std::exp2(v); }); }
  Index size() const noexcept { return log2_.size(); }
  bool is_zero(Index i) const;
  Index support_size() const;
  /// log2 of the total weight.
  double log2_total() const;
  /// The weights rescaled to a pmf (entries may underflow to 0 for extreme tilts).
  Eigen::VectorXd normalized() const;

 private:
  TargetWeights() = default;
  void validate() const;

  Eigen::VectorXd log2_;
};

/// kl(d || x / sum(x)) in bits.
double kl_to_normalized(const DyadicPmf& d, const TargetWeights& x);

/// Geometric Huffman coding: the dyadic pmf closest in KL distance to the
/// normalized target.
///
/// Repeatedly takes the two smallest weights a <= b (ties broken by lowest
/// original symbol index). If b >= 4a, the subtree holding a is discarded
/// and its symbols get probability zero; otherwise the pair is merged into a
/// node of weight 2*sqrt(a*b). Codeword lengths are the depths in the final
/// tree. Symbols with zero weight always get probability zero.
DyadicPmf ghc(const TargetWeights& x);

/// Exhaustive search over every dyadic pmf with lengths <= max_len on the
/// support of x. Used as an optimality certificate for ghc.
/// Throws Error(SizeCap) beyond 8 support symbols or max_len 10.
DyadicPmf brute_force_dyadic(const TargetWeights& x, int max_len);

inline constexpr Index kBruteForceMaxSupport = 8;
inline constexpr int kBruteForceMaxLength = 10;

}  // namespace dyad
