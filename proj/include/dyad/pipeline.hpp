#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "dyad/codes.hpp"
#include "dyad/pmf.hpp"

namespace dyad {

// Text -> source code -> bits -> matcher -> output symbols, and back.
// Bit sequences are std::strings over {'0','1'}. Output symbol streams hold
// one character per symbol.

/// Slat pitch of the facade instance, meters; shadowing = cost / pitch.
inline constexpr double kFacadeSlotWidth = 0.625;

/// Figures measured on the original facade installation. They depend on a
/// quote corpus that is not available, so they are kept for reference only.
namespace facade_reference {
inline constexpr int kSlatCount = 4264;
inline constexpr std::array<double, 3> kEffectiveFreqs{0.3838, 0.39457, 0.22162};
inline constexpr double kEffectiveCost = 0.20881;
inline constexpr std::array<double, 3> kStrictEffectiveFreqs{0.39132, 0.4317, 0.17698};
inline constexpr double kStrictEffectiveCost = 0.20301;
inline constexpr double kZeroBitFraction = 0.494;
}  // namespace facade_reference

struct FrequencyStats {
  Eigen::VectorXd effective_freqs;  // empirical pmf of output symbols
  double effective_cost = 0.0;      // w^T effective_freqs
  double shadowing = 0.0;           // effective_cost / kFacadeSlotWidth
  std::optional<double> zero_fraction;  // share of zeros in the compressed bits
};

struct EncodeResult {
  std::string symbols;
  std::size_t bit_count = 0;  // message bits represented by `symbols`
  std::size_t pad_bits = 0;   // zeros appended to finish the last codeword
  int blocklength = 0;
  std::optional<FrequencyStats> stats;
};

/// Lowercases the text and concatenates source codewords. A space maps to
/// the token "_" (or " " if present). Throws Error(InvalidArgument) naming
/// the position of the first character the code does not cover.
std::string compress_text(std::string_view text, const PrefixCode& source);

/// Inverse of compress_text; "_" decodes to a space. Throws if the bits end
/// inside a codeword.
std::string decompress_text(std::string_view bits, const PrefixCode& source);

/// Common length of all matcher symbols (the blocklength k).
int matcher_blocklength(const PrefixCode& matcher);

/// Parses the bits with a complete matcher, one symbol block per codeword.
/// A trailing partial codeword is completed with zeros (pad_bits).
EncodeResult match_bits(std::string_view bits, const PrefixCode& matcher);

/// Maps whole blocks back to codewords and keeps the first bit_count bits.
std::string unmatch_symbols(std::string_view symbols, const PrefixCode& matcher,
                            std::size_t bit_count);

/// unmatch_symbols then decompress_text. A trailing partial block (left by
/// cutting the stream at a budget that is not a multiple of k) is ignored.
std::string decode_symbols(std::string_view symbols, const PrefixCode& matcher,
                           const PrefixCode& source, std::size_t bit_count);

/// Empirical frequencies over `alphabet` (single-character tokens) and cost.
FrequencyStats facade_stats(std::string_view symbols, const CostVector& w,
                            const SymbolAlphabet& alphabet);

struct FacadeRun {
  EncodeResult result;
  std::size_t chars_total = 0;
  std::size_t chars_consumed = 0;  // characters fully recoverable from `symbols`
  std::size_t fill_bits = 0;       // zeros appended to reach the budget
  bool truncated = false;
};

/// Full pipeline producing exactly `slat_budget` symbols: a short message is
/// extended with zero bits, a long one is cut at the budget. With `strict`,
/// a message that does not fit is an Error(InvalidArgument) reporting how
/// many characters would fit.
FacadeRun run_facade(std::string_view text, const PrefixCode& source, const PrefixCode& matcher,
                     const CostVector& w, const SymbolAlphabet& output, std::size_t slat_budget,
                     bool strict = false);

}  // namespace dyad
