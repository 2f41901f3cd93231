#include "dyad/codes.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "dyad/error.hpp"

namespace dyad {

// ---------------------------------------------------------------------------
// SymbolAlphabet

SymbolAlphabet::SymbolAlphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  require(!tokens_.empty(), "alphabet must not be empty");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    require(!tokens_[i].empty(), "alphabet tokens must not be empty");
    const bool inserted = index_.emplace(tokens_[i], static_cast<Index>(i)).second;
    require(inserted, "duplicate alphabet token '" + tokens_[i] + "'");
  }
}

SymbolAlphabet SymbolAlphabet::from_chars(std::string_view chars) {
  std::vector<std::string> tokens;
  for (char c : chars) tokens.emplace_back(1, c);
  return SymbolAlphabet(std::move(tokens));
}

std::optional<Index> SymbolAlphabet::index_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymbolAlphabet block_alphabet(const SymbolAlphabet& base, int k, std::size_t cap) {
  require(k >= 1, "blocklength must be positive");
  std::vector<std::string> blocks{""};
  for (int step = 0; step < k; ++step) {
    if (blocks.size() > cap / static_cast<std::size_t>(base.size()))
      fail(ErrorKind::SizeCap, "block alphabet exceeds the size cap");
    std::vector<std::string> next;
    next.reserve(blocks.size() * static_cast<std::size_t>(base.size()));
    for (const auto& prefix : blocks)
      for (const auto& token : base.tokens()) next.push_back(prefix + token);
    blocks = std::move(next);
  }
  return SymbolAlphabet(std::move(blocks));
}

// ---------------------------------------------------------------------------
// PrefixCode

std::vector<std::pair<std::size_t, std::size_t>> prefix_violations(
    std::span<const Codeword> entries) {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return entries[a].bits < entries[b].bits; });
  // In lexicographic order every word that has a given prefix follows it
  // contiguously.
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::string& p = entries[order[i]].bits;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const std::string& q = entries[order[j]].bits;
      if (q.compare(0, p.size(), p) != 0) break;
      out.emplace_back(order[i], order[j]);
    }
  }
  return out;
}

PrefixCode::PrefixCode(std::vector<Codeword> entries, CodeDirection direction)
    : entries_(std::move(entries)), direction_(direction) {
  require(!entries_.empty(), "a code needs at least one codeword");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Codeword& cw = entries_[i];
    require(!cw.symbol.empty(), "codeword symbol must not be empty");
    require(!cw.bits.empty(), "codeword for '" + cw.symbol + "' is empty");
    require(cw.bits.find_first_not_of("01") == std::string::npos,
            "codeword for '" + cw.symbol + "' is not a bit string");
    require(by_symbol_.emplace(cw.symbol, i).second, "duplicate symbol '" + cw.symbol + "'");
  }
  if (const auto bad = prefix_violations(entries_); !bad.empty())
    require(false, "codeword " + entries_[bad.front().first].bits + " ('" +
                       entries_[bad.front().first].symbol + "') is a prefix of " +
                       entries_[bad.front().second].bits + " ('" +
                       entries_[bad.front().second].symbol + "')");

  children_.push_back({-1, -1});
  leaf_.push_back(-1);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    int node = 0;
    for (char c : entries_[i].bits) {
      const int b = c - '0';
      if (children_[static_cast<std::size_t>(node)][static_cast<std::size_t>(b)] == -1) {
        children_[static_cast<std::size_t>(node)][static_cast<std::size_t>(b)] =
            static_cast<int>(children_.size());
        children_.push_back({-1, -1});
        leaf_.push_back(-1);
      }
      node = children_[static_cast<std::size_t>(node)][static_cast<std::size_t>(b)];
    }
    leaf_[static_cast<std::size_t>(node)] = static_cast<int>(i);
  }
}

const std::string* PrefixCode::find(std::string_view symbol) const {
  auto it = by_symbol_.find(std::string(symbol));
  return it == by_symbol_.end() ? nullptr : &entries_[it->second].bits;
}

const std::string& PrefixCode::codeword(std::string_view symbol) const {
  const std::string* bits = find(symbol);
  require(bits != nullptr, "symbol '" + std::string(symbol) + "' is not in the code");
  return *bits;
}

Rational PrefixCode::kraft() const {
  std::vector<int> lengths;
  lengths.reserve(entries_.size());
  for (const auto& cw : entries_) lengths.push_back(static_cast<int>(cw.bits.size()));
  return kraft_sum(lengths);
}

int PrefixCode::max_length() const {
  std::size_t longest = 0;
  for (const auto& cw : entries_) longest = std::max(longest, cw.bits.size());
  return static_cast<int>(longest);
}

std::optional<std::size_t> PrefixCode::step(Cursor& cursor, char bit) const {
  require(bit == '0' || bit == '1', "bit stream contains a character other than 0/1");
  const int next = children_[static_cast<std::size_t>(cursor.node)][static_cast<std::size_t>(bit - '0')];
  require(next != -1, "bit sequence is not a codeword prefix (incomplete code)");
  const int leaf = leaf_[static_cast<std::size_t>(next)];
  if (leaf >= 0) {
    cursor = {};
    return static_cast<std::size_t>(leaf);
  }
  cursor.node = next;
  ++cursor.depth;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

// Adds one to a bit string, which must not be all ones.
void increment(std::string& bits) {
  for (std::size_t i = bits.size(); i-- > 0;) {
    if (bits[i] == '0') {
      bits[i] = '1';
      return;
    }
    bits[i] = '0';
  }
  fail(ErrorKind::InvalidArgument, "canonical code overflow");
}

}  // namespace

PrefixCode canonical_code(const DyadicPmf& d, const SymbolAlphabet& alphabet,
                          CodeDirection direction) {
  require(d.size() == alphabet.size(), "canonical_code: alphabet size does not match the pmf");
  require(kraft_sum(d.lengths()) == 1, "canonical_code: lengths violate Kraft equality");

  std::vector<Index> order;
  for (Index i = 0; i < d.size(); ++i)
    if (!d.is_zero(i)) order.push_back(i);
  require(order.size() >= 2, "canonical_code: a code needs at least two codewords");
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return d.length(a) < d.length(b); });

  std::vector<Codeword> entries;
  entries.reserve(order.size());
  std::string code;
  for (std::size_t n = 0; n < order.size(); ++n) {
    const auto len = static_cast<std::size_t>(d.length(order[n]));
    if (n == 0)
      code.assign(len, '0');
    else {
      increment(code);
      code.append(len - code.size(), '0');
    }
    entries.push_back({alphabet[order[n]], code});
  }
  return PrefixCode(std::move(entries), direction);
}

PrefixCode huffman(std::span<const double> freqs, const SymbolAlphabet& alphabet) {
  require(static_cast<Index>(freqs.size()) == alphabet.size(),
          "huffman: alphabet size does not match the frequencies");
  require(freqs.size() >= 2, "huffman: need at least two symbols");
  for (std::size_t i = 0; i < freqs.size(); ++i)
    require(freqs[i] > 0.0 && std::isfinite(freqs[i]),
            "huffman: frequency of '" + alphabet[static_cast<Index>(i)] + "' is not positive");

  struct Node {
    double freq;
    std::size_t key;  // lowest symbol index below
    int id;
  };
  struct Greater {
    bool operator()(const Node& a, const Node& b) const {
      if (a.freq != b.freq) return a.freq > b.freq;
      return a.key > b.key;
    }
  };

  const std::size_t m = freqs.size();
  std::vector<std::array<int, 2>> children(m, {-1, -1});
  std::priority_queue<Node, std::vector<Node>, Greater> heap;
  for (std::size_t i = 0; i < m; ++i) heap.push({freqs[i], i, static_cast<int>(i)});
  while (heap.size() > 1) {
    Node a = heap.top();
    heap.pop();
    Node b = heap.top();
    heap.pop();
    if (b.key < a.key) std::swap(a, b);
    const int id = static_cast<int>(children.size());
    children.push_back({a.id, b.id});
    heap.push({a.freq + b.freq, a.key, id});
  }

  std::vector<std::string> bits(m);
  std::vector<std::pair<int, std::string>> stack{{heap.top().id, ""}};
  while (!stack.empty()) {
    auto [id, prefix] = std::move(stack.back());
    stack.pop_back();
    if (static_cast<std::size_t>(id) < m) {
      bits[static_cast<std::size_t>(id)] = prefix;
      continue;
    }
    stack.emplace_back(children[static_cast<std::size_t>(id)][1], prefix + '1');
    stack.emplace_back(children[static_cast<std::size_t>(id)][0], prefix + '0');
  }

  std::vector<Codeword> entries;
  entries.reserve(m);
  for (std::size_t i = 0; i < m; ++i) entries.push_back({alphabet[static_cast<Index>(i)], bits[i]});
  return PrefixCode(std::move(entries), CodeDirection::Source);
}

Rational verify_kraft(const PrefixCode& code) { return code.kraft(); }

std::vector<int> code_lengths(const PrefixCode& code, const SymbolAlphabet& alphabet) {
  std::vector<int> lengths(static_cast<std::size_t>(alphabet.size()), DyadicPmf::kInfinite);
  for (Index i = 0; i < alphabet.size(); ++i)
    if (const std::string* bits = code.find(alphabet[i]))
      lengths[static_cast<std::size_t>(i)] = static_cast<int>(bits->size());
  return lengths;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

[[noreturn]] void parse_error(std::size_t line, std::size_t column, const std::string& what) {
  fail(ErrorKind::Parse,
       "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::pair<std::vector<Codeword>, CodeDirection> read_code_entries(std::istream& in) {
  std::vector<Codeword> entries;
  CodeDirection direction = CodeDirection::Source;
  std::unordered_map<std::string, std::size_t> symbol_line;
  std::unordered_map<std::string, std::size_t> bits_line;

  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view line = raw;
    if (trim(line).empty()) continue;
    if (trim(line).front() == '#') {
      std::string_view body = trim(trim(line).substr(1));
      constexpr std::string_view key = "direction:";
      if (body.substr(0, key.size()) == key) {
        const std::string_view value = trim(body.substr(key.size()));
        if (value == "matcher")
          direction = CodeDirection::Matcher;
        else if (value == "source")
          direction = CodeDirection::Source;
        else
          parse_error(line_no, 1, "unknown direction '" + std::string(value) + "'");
      }
      continue;
    }

    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) parse_error(line_no, line.size() + 1, "expected a TAB");
    const std::string_view symbol = line.substr(0, tab);
    if (symbol.empty()) parse_error(line_no, 1, "empty symbol");
    if (symbol.find(' ') != std::string_view::npos)
      parse_error(line_no, symbol.find(' ') + 1, "symbol contains a space");

    std::string_view bits = line.substr(tab + 1);
    const std::size_t bits_col = tab + 2;
    while (!bits.empty() && (bits.back() == ' ' || bits.back() == '\t')) bits.remove_suffix(1);
    if (bits.empty()) parse_error(line_no, bits_col, "empty codeword");
    if (const auto bad = bits.find_first_not_of("01"); bad != std::string_view::npos)
      parse_error(line_no, bits_col + bad, "codeword must contain only 0 and 1");

    if (auto [it, ok] = symbol_line.emplace(std::string(symbol), line_no); !ok)
      parse_error(line_no, 1, "duplicate symbol '" + std::string(symbol) + "' (first on line " +
                                  std::to_string(it->second) + ")");
    if (auto [it, ok] = bits_line.emplace(std::string(bits), line_no); !ok)
      parse_error(line_no, bits_col, "duplicate codeword " + std::string(bits) +
                                         " (first on line " + std::to_string(it->second) + ")");
    entries.push_back({std::string(symbol), std::string(bits)});
  }
  if (entries.empty()) fail(ErrorKind::Parse, "code table has no entries");
  return {std::move(entries), direction};
}

PrefixCode read_code(std::istream& in) {
  auto [entries, direction] = read_code_entries(in);
  if (const auto bad = prefix_violations(entries); !bad.empty())
    fail(ErrorKind::Parse, "codeword " + entries[bad.front().first].bits + " ('" +
                               entries[bad.front().first].symbol + "') is a prefix of " +
                               entries[bad.front().second].bits + " ('" +
                               entries[bad.front().second].symbol + "')");
  return PrefixCode(std::move(entries), direction);
}

void write_code(std::ostream& out, const PrefixCode& code) {
  out << "# direction: " << (code.direction() == CodeDirection::Matcher ? "matcher" : "source")
      << '\n';
  for (const auto& cw : code.entries()) out << cw.symbol << '\t' << cw.bits << '\n';
}

PrefixCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open code table '" + path + "'");
  try {
    return read_code(in);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

void save_code(const std::string& path, const PrefixCode& code) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write code table '" + path + "'");
  write_code(out, code);
}

}  // namespace dyad
