#include "dyad/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "dyad/error.hpp"

namespace dyad {

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::Parse, "expected a JSON array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& v = j[i];
    if (v.is_string())
      out.push_back(parse_rational(v.get<std::string>()));
    else if (v.is_number_integer())
      out.emplace_back(v.get<long long>());
    else if (v.is_number())
      out.push_back(to_rational(v.get<double>()));
    else
      fail(ErrorKind::Parse, "array entry " + std::to_string(i) + " is not a number or string");
  }
  return out;
}

Pmf pmf_from_json(const Json& j) {
  const auto exact = rationals_from_json(j);
  Eigen::VectorXd p(static_cast<Index>(exact.size()));
  for (std::size_t i = 0; i < exact.size(); ++i) p(static_cast<Index>(i)) = to_double(exact[i]);
  try {
    return Pmf(std::move(p));
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

CostVector costs_from_json(const Json& j) {
  try {
    return CostVector(rationals_from_json(j));
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(x);
}

Json to_json(const Pmf& p) {
  Json j = Json::array();
  for (Index i = 0; i < p.size(); ++i) j.push_back(format_double(p[i]));
  return j;
}

Json to_json(const CostVector& w) {
  Json j = Json::array();
  for (const auto& c : w.exact()) j.push_back(to_string(c));
  return j;
}

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

}  // namespace

Pmf load_pmf(const std::string& path) {
  try {
    return pmf_from_json(read_json_file(path));
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

CostVector load_costs(const std::string& path) {
  try {
    return costs_from_json(read_json_file(path));
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

Json to_json(const CcGhcResult& r) {
  Json lengths = Json::array();
  for (int l : r.d.lengths()) lengths.push_back(l == DyadicPmf::kInfinite ? Json(nullptr) : Json(l));
  Json trace = Json::array();
  for (const auto& p : r.trace)
    trace.push_back({{"lambda", p.lambda}, {"cost", p.cost}, {"kl", p.kl}, {"feasible", p.feasible}});
  Json j = {
      {"lengths", lengths},
      {"lambda_star", r.lambda_star},
      {"cost", r.cost},
      {"cost_exact", to_string(r.exact_cost)},
      {"kl", r.kl},
      {"iterations", r.iterations},
      {"bracket", {r.bracket.first, r.bracket.second}},
      {"trace", trace},
  };
  if (r.best_feasible)
    j["best_feasible"] = {{"lambda", r.best_feasible->lambda},
                          {"cost", r.best_feasible->cost},
                          {"kl", r.best_feasible->kl}};
  return j;
}

Json to_json(const TiltedSolution& s) {
  return {{"p_star", to_json(s.p_star)}, {"lambda", s.lambda}, {"E", s.E}, {"D", s.D}};
}

Json to_json(const FrequencyStats& s) {
  Json freqs = Json::array();
  for (Index i = 0; i < s.effective_freqs.size(); ++i) freqs.push_back(s.effective_freqs(i));
  Json j = {{"effective_freqs", freqs},
            {"effective_cost", s.effective_cost},
            {"shadowing", s.shadowing}};
  if (s.zero_fraction) j["zero_fraction"] = *s.zero_fraction;
  return j;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "E,D,lambda\n";
  for (const auto& p : curve)
    out << format_double(p.E) << ',' << format_double(p.D) << ',' << format_double(p.lambda) << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const ConvergenceRecord> sweep) {
  out << "k,kl_per_symbol,cost_per_symbol,lambda_star,gap\n";
  for (const auto& r : sweep)
    out << r.k << ',' << format_double(r.kl_per_symbol) << ',' << format_double(r.cost_per_symbol)
        << ',' << format_double(r.lambda_star) << ',' << format_double(r.gap) << '\n';
}

}  // namespace dyad
