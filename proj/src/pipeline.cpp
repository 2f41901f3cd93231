#include "dyad/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "dyad/error.hpp"

namespace dyad {

namespace {

const std::string* source_token(const PrefixCode& source, char c) {
  if (c == ' ') {
    if (const std::string* bits = source.find(" ")) return bits;
    return source.find("_");
  }
  return source.find(std::string_view(&c, 1));
}

std::size_t count_zeros(std::string_view bits) {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), '0'));
}

}  // namespace

std::string compress_text(std::string_view text, const PrefixCode& source) {
  std::string bits;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos])));
    const std::string* cw = source_token(source, c);
    require(cw != nullptr, "character '" + std::string(1, text[pos]) + "' at position " +
                               std::to_string(pos) + " is not in the source alphabet");
    bits += *cw;
  }
  return bits;
}

std::string decompress_text(std::string_view bits, const PrefixCode& source) {
  std::string text;
  PrefixCode::Cursor cursor;
  for (char bit : bits) {
    if (auto entry = source.step(cursor, bit)) {
      const std::string& symbol = source.entries()[*entry].symbol;
      text += symbol == "_" ? std::string(" ") : symbol;
    }
  }
  require(cursor.node == 0, "bit sequence ends inside a codeword");
  return text;
}

int matcher_blocklength(const PrefixCode& matcher) {
  const std::size_t k = matcher.entries().front().symbol.size();
  for (const auto& cw : matcher.entries())
    require(cw.symbol.size() == k, "matcher blocks have different lengths ('" +
                                       matcher.entries().front().symbol + "' vs '" + cw.symbol +
                                       "')");
  return static_cast<int>(k);
}

EncodeResult match_bits(std::string_view bits, const PrefixCode& matcher) {
  require(matcher.is_complete(), "matcher code is not complete (Kraft sum " +
                                     to_string(matcher.kraft()) + ")");
  EncodeResult r;
  r.blocklength = matcher_blocklength(matcher);
  r.bit_count = bits.size();

  PrefixCode::Cursor cursor;
  auto feed = [&](char bit) {
    if (auto entry = matcher.step(cursor, bit)) r.symbols += matcher.entries()[*entry].symbol;
  };
  for (char bit : bits) feed(bit);
  while (cursor.node != 0) {
    feed('0');
    ++r.pad_bits;
  }
  return r;
}

std::string unmatch_symbols(std::string_view symbols, const PrefixCode& matcher,
                            std::size_t bit_count) {
  const auto k = static_cast<std::size_t>(matcher_blocklength(matcher));
  require(symbols.size() % k == 0, "symbol count " + std::to_string(symbols.size()) +
                                       " is not a multiple of the blocklength " +
                                       std::to_string(k));
  std::string bits;
  for (std::size_t pos = 0; pos < symbols.size(); pos += k) {
    const std::string_view block = symbols.substr(pos, k);
    const std::string* cw = matcher.find(block);
    require(cw != nullptr, "unknown block '" + std::string(block) + "' at symbol " +
                               std::to_string(pos));
    bits += *cw;
  }
  require(bit_count <= bits.size(), "bit count " + std::to_string(bit_count) +
                                        " exceeds the " + std::to_string(bits.size()) +
                                        " bits carried by the symbols");
  bits.resize(bit_count);
  return bits;
}

std::string decode_symbols(std::string_view symbols, const PrefixCode& matcher,
                           const PrefixCode& source, std::size_t bit_count) {
  const auto k = static_cast<std::size_t>(matcher_blocklength(matcher));
  const std::string_view whole = symbols.substr(0, symbols.size() - symbols.size() % k);
  return decompress_text(unmatch_symbols(whole, matcher, bit_count), source);
}

FrequencyStats facade_stats(std::string_view symbols, const CostVector& w,
                            const SymbolAlphabet& alphabet) {
  require(!symbols.empty(), "facade_stats: empty symbol sequence");
  require(w.size() == alphabet.size(), "facade_stats: cost vector and alphabet differ in size");
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(alphabet.size());
  for (std::size_t pos = 0; pos < symbols.size(); ++pos) {
    const auto idx = alphabet.index_of(symbols.substr(pos, 1));
    require(idx.has_value(), "symbol '" + std::string(1, symbols[pos]) + "' at position " +
                                 std::to_string(pos) + " is not in the output alphabet");
    counts(*idx) += 1.0;
  }
  FrequencyStats s;
  s.effective_freqs = counts / static_cast<double>(symbols.size());
  s.effective_cost = w.values().dot(s.effective_freqs);
  s.shadowing = s.effective_cost / kFacadeSlotWidth;
  return s;
}

FacadeRun run_facade(std::string_view text, const PrefixCode& source, const PrefixCode& matcher,
                     const CostVector& w, const SymbolAlphabet& output, std::size_t slat_budget,
                     bool strict) {
  require(slat_budget > 0, "slat budget must be positive");

  // Bit offset at which each character's codeword ends.
  std::vector<std::size_t> char_ends;
  char_ends.reserve(text.size());
  std::string bits;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    bits += compress_text(text.substr(pos, 1), source);
    char_ends.push_back(bits.size());
  }

  FacadeRun run;
  run.chars_total = text.size();
  run.result = match_bits(bits, matcher);
  EncodeResult& r = run.result;
  const auto k = static_cast<std::size_t>(r.blocklength);

  if (r.symbols.size() <= slat_budget) {
    run.chars_consumed = text.size();
    PrefixCode::Cursor cursor;
    while (r.symbols.size() < slat_budget) {
      ++run.fill_bits;
      if (auto entry = matcher.step(cursor, '0')) r.symbols += matcher.entries()[*entry].symbol;
    }
  } else {
    run.truncated = true;
    // Bits carried by the whole blocks that survive the cut.
    std::size_t carried = 0;
    for (std::size_t pos = 0; pos + k <= slat_budget; pos += k)
      carried += matcher.codeword(std::string_view(r.symbols).substr(pos, k)).size();
    carried = std::min(carried, bits.size());
    run.chars_consumed = static_cast<std::size_t>(
        std::upper_bound(char_ends.begin(), char_ends.end(), carried) - char_ends.begin());
    if (strict)
      fail(ErrorKind::InvalidArgument,
           "text needs " + std::to_string(r.symbols.size()) + " symbols but the budget is " +
               std::to_string(slat_budget) + "; only the first " +
               std::to_string(run.chars_consumed) + " characters fit");
    r.bit_count = run.chars_consumed == 0 ? 0 : char_ends[run.chars_consumed - 1];
    r.pad_bits = 0;
  }
  r.symbols.resize(slat_budget);

  r.stats = facade_stats(r.symbols, w, output);
  if (!bits.empty())
    r.stats->zero_fraction = static_cast<double>(count_zeros(bits)) / static_cast<double>(bits.size());
  return run;
}

}  // namespace dyad
