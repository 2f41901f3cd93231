// dyad: command line front end for cost constrained dyadic matching.
//
//   dyad match    --target t.json --costs w.json --budget S [--block k] [--eps e]
//   dyad optimal  --target t.json --costs w.json --budget E
//   dyad curve    --target t.json --costs w.json --grid a:b:n
//   dyad sweep    --target t.json --costs w.json --budget S --kmax K
//   dyad encode   --text f --source-code c --matcher c --costs w.json [--slats N]
//   dyad decode   --slats f --matcher c --source-code c --bits N
//   dyad verify   --code c
//
// Exit codes: 0 ok, 1 bad arguments, 2 infeasible, 3 parse error, 4 size cap,
// 5 non-convergence.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dyad/dyad.hpp"

namespace {

using namespace dyad;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

SymbolAlphabet symbols_or_default(const std::string& chars, Index m) {
  if (!chars.empty()) {
    SymbolAlphabet a = SymbolAlphabet::from_chars(chars);
    require(a.size() == m, "--symbols has " + std::to_string(a.size()) + " symbols, expected " +
                               std::to_string(m));
    return a;
  }
  require(m <= 26, "give --symbols for alphabets larger than 26");
  std::string letters;
  for (Index i = 0; i < m; ++i) letters += static_cast<char>('a' + i);
  return SymbolAlphabet::from_chars(letters);
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = spec.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos)
    fail(ErrorKind::Parse, "grid must look like a:b:n");
  const double lo = to_double(parse_rational(spec.substr(0, a)));
  const double hi = to_double(parse_rational(spec.substr(a + 1, b - a - 1)));
  const Rational n = parse_rational(spec.substr(b + 1));
  if (boost::multiprecision::denominator(n) != 1) fail(ErrorKind::Parse, "grid count must be an integer");
  return linear_grid(lo, hi, n.convert_to<int>());
}

struct Common {
  std::string target;
  std::string costs;
  std::string budget;
};

void add_instance(CLI::App* cmd, Common& c, bool budget) {
  cmd->add_option("--target", c.target, "target pmf (JSON array)")->required();
  cmd->add_option("--costs", c.costs, "per-symbol costs (JSON array)")->required();
  if (budget) cmd->add_option("--budget", c.budget, "average cost budget per symbol")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost constrained dyadic distribution matching"};
  app.require_subcommand(1);

  Common match_opts;
  int block = 1;
  double eps = 1e-9;
  std::string match_symbols;
  std::string code_out;
  auto* match = app.add_subcommand("match", "run ccghc and print the result and matcher code");
  add_instance(match, match_opts, true);
  match->add_option("--block", block, "blocklength k")->check(CLI::PositiveNumber);
  match->add_option("--eps", eps, "bisection tolerance on lambda")->check(CLI::PositiveNumber);
  match->add_option("--symbols", match_symbols, "one character per symbol, e.g. lrm");
  match->add_option("--code-out", code_out, "also write the matcher code table here");

  Common optimal_opts;
  auto* optimal = app.add_subcommand("optimal", "solve the relaxed problem on the simplex");
  add_instance(optimal, optimal_opts, true);

  Common curve_opts;
  std::string grid;
  auto* curve = app.add_subcommand("curve", "distance-cost curve as CSV");
  add_instance(curve, curve_opts, false);
  curve->add_option("--grid", grid, "a:b:n")->required();

  Common sweep_opts;
  int kmax = 1;
  auto* sweep = app.add_subcommand("sweep", "blocklength convergence sweep as CSV");
  add_instance(sweep, sweep_opts, true);
  sweep->add_option("--kmax", kmax, "largest blocklength")->required()->check(CLI::PositiveNumber);

  std::string text_path, source_path, matcher_path, costs_path, out_symbols;
  std::string output_symbols = "lrm";
  std::size_t slats = 0;
  bool strict = false;
  auto* encode = app.add_subcommand("encode", "text -> symbol stream");
  encode->add_option("--text", text_path, "text file")->required();
  encode->add_option("--source-code", source_path, "source code table")->required();
  encode->add_option("--matcher", matcher_path, "matcher code table")->required();
  encode->add_option("--costs", costs_path, "per-symbol costs (JSON array)")->required();
  encode->add_option("--slats", slats, "exact number of output symbols (default: as needed)");
  encode->add_option("--symbols", output_symbols, "output alphabet, one character per symbol");
  encode->add_flag("--strict", strict, "fail instead of truncating when the text does not fit");

  std::string slats_path;
  std::size_t bits = 0;
  auto* decode = app.add_subcommand("decode", "symbol stream -> text");
  decode->add_option("--slats", slats_path, "symbol stream file")->required();
  decode->add_option("--matcher", matcher_path, "matcher code table")->required();
  decode->add_option("--source-code", source_path, "source code table")->required();
  decode->add_option("--bits", bits, "message bit count printed by encode")->required();

  std::string code_path;
  auto* verify = app.add_subcommand("verify", "Kraft sum and prefix-freeness of a code table");
  verify->add_option("--code", code_path, "code table")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*match) {
      Pmf t = load_pmf(match_opts.target);
      CostVector w = load_costs(match_opts.costs);
      const Rational S = parse_rational(match_opts.budget);
      SymbolAlphabet alphabet = symbols_or_default(match_symbols, t.size());
      if (block > 1) {
        t = kronecker_pmf(t, block);
        w = kronecker_cost(w, block);
        alphabet = block_alphabet(alphabet, block);
      }
      CcGhcOptions opts;
      opts.eps = eps;
      const CcGhcResult r = ccghc(t, w, S * block, opts);
      Json j = to_json(r);
      j["block"] = block;
      j["cost_per_symbol"] = to_double(r.exact_cost / block);
      j["kl_per_symbol"] = r.kl / block;
      std::cout << j.dump(2) << "\n";
      const PrefixCode code = canonical_code(r.d, alphabet);
      write_code(std::cout, code);
      if (!code_out.empty()) save_code(code_out, code);
    } else if (*optimal) {
      const Pmf t = load_pmf(optimal_opts.target);
      const CostVector w = load_costs(optimal_opts.costs);
      const double E = to_double(parse_rational(optimal_opts.budget));
      std::cout << to_json(solve_simplex(t, w, E)).dump(2) << "\n";
    } else if (*curve) {
      const Pmf t = load_pmf(curve_opts.target);
      const CostVector w = load_costs(curve_opts.costs);
      const auto g = parse_grid(grid);
      write_curve_csv(std::cout, distance_cost_curve(t, w, g));
    } else if (*sweep) {
      const Pmf t = load_pmf(sweep_opts.target);
      const CostVector w = load_costs(sweep_opts.costs);
      const Rational S = parse_rational(sweep_opts.budget);
      write_sweep_csv(std::cout, convergence_sweep(t, w, S, kmax));
    } else if (*encode) {
      const std::string text = strip_trailing_newlines(read_file(text_path));
      const PrefixCode source = load_code(source_path);
      const PrefixCode matcher = load_code(matcher_path);
      const CostVector w = load_costs(costs_path);
      const SymbolAlphabet output = SymbolAlphabet::from_chars(output_symbols);
      if (slats == 0) {
        // As many symbols as the message needs, rounded up to whole blocks.
        slats = match_bits(compress_text(text, source), matcher).symbols.size();
        slats = std::max<std::size_t>(slats, 1);
      }
      const FacadeRun run = run_facade(text, source, matcher, w, output, slats, strict);
      if (run.truncated)
        std::cerr << "warning: only the first " << run.chars_consumed << " of " << run.chars_total
                  << " characters fit into " << slats << " symbols\n";
      Json j = {{"bit_count", run.result.bit_count},
                {"pad_bits", run.result.pad_bits},
                {"fill_bits", run.fill_bits},
                {"blocklength", run.result.blocklength},
                {"chars_consumed", run.chars_consumed},
                {"chars_total", run.chars_total},
                {"truncated", run.truncated},
                {"stats", to_json(*run.result.stats)}};
      std::cout << run.result.symbols << "\n" << j.dump(2) << "\n";
    } else if (*decode) {
      std::string symbols;
      for (char c : read_file(slats_path))
        if (!std::isspace(static_cast<unsigned char>(c))) symbols += c;
      const PrefixCode matcher = load_code(matcher_path);
      const PrefixCode source = load_code(source_path);
      std::cout << decode_symbols(symbols, matcher, source, bits) << "\n";
    } else if (*verify) {
      std::ifstream in(code_path);
      if (!in) fail(ErrorKind::Parse, "cannot open '" + code_path + "'");
      auto [entries, direction] = read_code_entries(in);
      std::vector<int> lengths;
      for (const auto& cw : entries) lengths.push_back(static_cast<int>(cw.bits.size()));
      const Rational kraft = kraft_sum(lengths);
      const auto violations = prefix_violations(entries);
      Json bad = Json::array();
      for (auto [a, b] : violations)
        bad.push_back({{"prefix", entries[a].symbol}, {"of", entries[b].symbol}});
      Json j = {{"entries", entries.size()},
                {"direction", direction == CodeDirection::Matcher ? "matcher" : "source"},
                {"kraft", to_string(kraft)},
                {"complete", kraft == 1},
                {"prefix_free", violations.empty()},
                {"violations", bad}};
      std::cout << j.dump(2) << "\n";
      if (!violations.empty()) return static_cast<int>(ErrorKind::Parse);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return 0;
}
