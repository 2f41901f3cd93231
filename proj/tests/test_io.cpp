#include <doctest.h>

#include <random>
#include <sstream>

#include "dyad/error.hpp"
#include "dyad/io.hpp"

using namespace dyad;

namespace {

const std::string kData = DYAD_DATA_DIR;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind{};
}

}  // namespace

TEST_CASE("JSON arrays of strings and numbers") {
  const auto r = rationals_from_json(Json::parse(R"(["0.18", "1/3", 2, 0.5])"));
  CHECK(r == std::vector<Rational>{Rational(18, 100), Rational(1, 3), Rational(2), Rational(1, 2)});
  CHECK(kind_of([] { (void)rationals_from_json(Json::parse(R"({"a": 1})")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)rationals_from_json(Json::parse(R"([true])")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)rationals_from_json(Json::parse(R"(["x"])")); }) == ErrorKind::Parse);
}

TEST_CASE("shipped instance files") {
  const Pmf t = load_pmf(kData + "/facade_target.json");
  const CostVector w = load_costs(kData + "/facade_costs.json");
  CHECK(t.size() == 3);
  CHECK(t[2] == doctest::Approx(1.0 / 3.0));
  CHECK(w.exact(2) == Rational(31, 100));
  CHECK(kind_of([] { (void)load_pmf("/nonexistent/t.json"); }) == ErrorKind::Parse);
}

TEST_CASE("invalid pmfs and costs are parse errors") {
  CHECK(kind_of([] { (void)pmf_from_json(Json::parse(R"(["0.5", "0.6"])")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)pmf_from_json(Json::parse(R"(["1"])")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)costs_from_json(Json::parse(R"(["-0.1", "1"])")); }) == ErrorKind::Parse);
}

TEST_CASE("format_double is the shortest round-trip form") {
  CHECK(format_double(0.18) == "0.18");
  CHECK(format_double(1.0) == "1");
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("pmf and cost JSON round trips") {
  Eigen::VectorXd v(3);
  v << 0.1, 0.2, 0.7;
  const Pmf p(v);
  CHECK(pmf_from_json(to_json(p)) == p);
  const CostVector w({Rational(18, 100), Rational(1, 3), Rational(0)});
  CHECK(costs_from_json(to_json(w)).exact() == w.exact());
}

TEST_CASE("result JSON fields") {
  const CcGhcResult r = ccghc(Pmf::uniform(3), load_costs(kData + "/facade_costs.json"), parse_rational("0.2233"));
  const Json j = to_json(r);
  CHECK(j["lengths"] == Json::array({2, 1, 2}));
  CHECK(j["cost_exact"] == "0.2125");
  CHECK(j["trace"].size() == r.trace.size());

  const CcGhcResult loose = ccghc(Pmf(Eigen::Vector3d(0.5, 0.5, 0.0)),
                                  load_costs(kData + "/facade_costs.json"), parse_rational("1"));
  CHECK(to_json(loose)["lengths"][2].is_null());

  const TiltedSolution s = solve_simplex(Pmf::uniform(3), load_costs(kData + "/facade_costs.json"), 0.2063);
  const Json js = to_json(s);
  CHECK(js["p_star"].size() == 3);
  CHECK(js["lambda"].get<double>() == s.lambda);
}

TEST_CASE("CSV writers") {
  std::ostringstream curve;
  const std::vector<CurvePoint> pts = {{0.19, 0.5, 10.0}, {0.2, 0.25, 5.0}};
  write_curve_csv(curve, pts);
  CHECK(curve.str() == "E,D,lambda\n0.19,0.5,10\n0.2,0.25,5\n");

  std::ostringstream sweep;
  ConvergenceRecord rec;
  rec.k = 3;
  rec.kl_per_symbol = 0.5;
  rec.cost_per_symbol = 0.25;
  rec.lambda_star = 2;
  rec.gap = 0.125;
  write_sweep_csv(sweep, std::vector<ConvergenceRecord>{rec});
  CHECK(sweep.str() == "k,kl_per_symbol,cost_per_symbol,lambda_star,gap\n3,0.5,0.25,2,0.125\n");
}
