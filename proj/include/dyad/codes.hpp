#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyad/exact.hpp"
#include "dyad/pmf.hpp"

namespace dyad {

/// Ordered list of distinct, non-empty tokens.
class SymbolAlphabet {
 public:
  explicit SymbolAlphabet(std::vector<std::string> tokens);
  /// One token per character, e.g. "lrm".
  static SymbolAlphabet from_chars(std::string_view chars);

  Index size() const noexcept { return static_cast<Index>(tokens_.size()); }
  const std::string& operator[](Index i) const { return tokens_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::optional<Index> index_of(std::string_view token) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Index> index_;
};

/// Tokens of all k-blocks, concatenated, in Kronecker order (first symbol
/// most significant).
SymbolAlphabet block_alphabet(const SymbolAlphabet& base, int k, std::size_t cap = kDefaultSizeCap);

enum class CodeDirection { Source, Matcher };

struct Codeword {
  std::string symbol;
  std::string bits;  // over {'0','1'}, non-empty

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// Prefix-free binary code. Completeness (Kraft sum exactly 1) is not
/// enforced at construction; matchers check it with is_complete().
class PrefixCode {
 public:
  /// Throws Error(InvalidArgument) on duplicate symbols, malformed bit
  /// strings or a codeword that is a prefix of another.
  explicit PrefixCode(std::vector<Codeword> entries,
                      CodeDirection direction = CodeDirection::Source);

  const std::vector<Codeword>& entries() const noexcept { return entries_; }
  CodeDirection direction() const noexcept { return direction_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Codeword of a symbol, or nullptr.
  const std::string* find(std::string_view symbol) const;
  const std::string& codeword(std::string_view symbol) const;

  Rational kraft() const;
  bool is_complete() const { return kraft() == 1; }
  int max_length() const;

  /// Incremental parser state: walk one bit at a time.
  struct Cursor {
    int node = 0;
    int depth = 0;
  };
  /// Feeds one bit; returns the entry index when a codeword completes (the
  /// cursor then restarts at the root). Throws Error(InvalidArgument) when
  /// the bit leaves the code tree, which only happens for incomplete codes.
  std::optional<std::size_t> step(Cursor& cursor, char bit) const;

  friend bool operator==(const PrefixCode& a, const PrefixCode& b) {
    return a.direction_ == b.direction_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<Codeword> entries_;
  CodeDirection direction_;
  std::unordered_map<std::string, std::size_t> by_symbol_;
  std::vector<std::array<int, 2>> children_;  // trie, -1 = none
  std::vector<int> leaf_;                     // entry index at a leaf, -1 otherwise
};

/// Pairs (i, j) of entries whose codeword i is a prefix of (or equal to) j.
std::vector<std::pair<std::size_t, std::size_t>> prefix_violations(std::span<const Codeword> entries);

/// Canonical assignment: symbols sorted by (length, alphabet index), each
/// codeword is the previous one plus one, left-shifted to the new length.
/// Zero-probability symbols get no codeword.
PrefixCode canonical_code(const DyadicPmf& d, const SymbolAlphabet& alphabet,
                          CodeDirection direction = CodeDirection::Matcher);

/// Huffman code for positive frequencies. The two smallest (frequency,
/// lowest symbol index) nodes are merged; the subtree with the lower symbol
/// index takes the 0 branch.
PrefixCode huffman(std::span<const double> freqs, const SymbolAlphabet& alphabet);

/// Sum of 2^-|codeword|, exactly. Equals 1 iff the code is complete.
Rational verify_kraft(const PrefixCode& code);

/// Codeword lengths in alphabet order; DyadicPmf::kInfinite for symbols
/// without a codeword.
std::vector<int> code_lengths(const PrefixCode& code, const SymbolAlphabet& alphabet);

// Code-table text format: UTF-8, one "<symbol>\t<bits>" entry per line,
// '#' starts a comment line, blank lines ignored. A comment
// "# direction: matcher" (or source) records the direction.

/// Parses entries without the prefix-freeness check. Throws Error(Parse)
/// with line and column on malformed lines or duplicate symbols/codewords.
std::pair<std::vector<Codeword>, CodeDirection> read_code_entries(std::istream& in);
/// read_code_entries plus prefix-freeness; violations are Error(Parse).
PrefixCode read_code(std::istream& in);
void write_code(std::ostream& out, const PrefixCode& code);

PrefixCode load_code(const std::string& path);
void save_code(const std::string& path, const PrefixCode& code);

}  // namespace dyad
