#include <doctest.h>

#include <random>

#include "dyad/error.hpp"
#include "dyad/exact.hpp"
#include "dyad/pmf.hpp"
#include "oracles.hpp"

using namespace dyad;

namespace {

Pmf make(std::initializer_list<double> v) {
  Eigen::VectorXd p(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) p(i++) = x;
  return Pmf(p);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind{};
}

}  // namespace

TEST_CASE("parse_rational reads decimals, exponents and fractions exactly") {
  CHECK(parse_rational("0.18") == Rational(18, 100));
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("-1.5e-3") == Rational(-15, 10000));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(kind_of([] { (void)parse_rational("0.1.2"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)parse_rational("abc"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)parse_rational("1/0"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)parse_rational(""); }) == ErrorKind::Parse);
}

TEST_CASE("to_string round-trips through parse_rational") {
  for (const Rational& r : {Rational(18, 100), Rational(1, 3), Rational(-7, 16), Rational(0),
                            Rational(6496875, 10000000), Rational(5, 12)})
    CHECK(parse_rational(to_string(r)) == r);
  CHECK(to_string(Rational(18, 100)) == "0.18");
  CHECK(to_string(Rational(1, 3)) == "1/3");
}

TEST_CASE("to_rational is the exact value of the double") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(to_double(to_rational(x)) == x);
  }
  CHECK(to_rational(0.5) == Rational(1, 2));
  CHECK(to_rational(0.1) != Rational(1, 10));
}

TEST_CASE("Pmf validation") {
  CHECK_NOTHROW(make({0.5, 0.5}));
  CHECK(kind_of([] { make({1.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { make({0.6, 0.6}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { make({1.5, -0.5}); }) == ErrorKind::InvalidArgument);
  CHECK(Pmf::uniform(4)[2] == doctest::Approx(0.25));
}

TEST_CASE("kl_divergence against a long double oracle") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 7);
    const Pmf p(oracle::random_pmf(rng, m, 0.3));
    const Pmf t(oracle::random_pmf(rng, m));
    std::vector<long double> pl, tl;
    for (Index i = 0; i < m; ++i) {
      pl.push_back(p[i]);
      tl.push_back(t[i]);
    }
    CHECK(kl_divergence(p, t) == doctest::Approx(static_cast<double>(oracle::kl_long(pl, tl))).epsilon(1e-12));
    CHECK(kl_divergence(p, t) >= -1e-15);
  }
}

TEST_CASE("kl_divergence edge cases") {
  const Pmf t = make({0.5, 0.5, 0.0});
  CHECK(kl_divergence(t, t) == 0.0);
  const Pmf p = make({0.25, 0.25, 0.5});
  CHECK_FALSE(kl_is_finite(kl_divergence(p, t)));
  CHECK(kind_of([&] { (void)kl_divergence_checked(p, t); }) == ErrorKind::InvalidArgument);
  // dyadic (1/2,1/4,1/4) against uniform(3)
  const DyadicPmf d({1, 2, 2});
  CHECK(kl_divergence(d, Pmf::uniform(3)) == doctest::Approx(0.0849625007211562).epsilon(1e-13));
}

TEST_CASE("DyadicPmf checks Kraft equality exactly") {
  CHECK_NOTHROW(DyadicPmf({1, 2, 3, 3}));
  CHECK_NOTHROW(DyadicPmf({1, DyadicPmf::kInfinite, 1}));
  CHECK_NOTHROW(DyadicPmf({0, DyadicPmf::kInfinite}));
  CHECK(kind_of([] { DyadicPmf({1, 2, 3}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { DyadicPmf({1, 1, 60}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { DyadicPmf({-1, 1}); }) == ErrorKind::InvalidArgument);
  // a near miss that doubles cannot see
  std::vector<int> lengths(1, 1);
  for (int l = 2; l <= 60; ++l) lengths.push_back(l);
  CHECK(kind_of([&] { DyadicPmf{lengths}; }) == ErrorKind::InvalidArgument);
  lengths.push_back(60);
  CHECK_NOTHROW(DyadicPmf{lengths});
  CHECK(kraft_sum(lengths) == 1);
  CHECK(DyadicPmf{lengths}.max_length() == 60);
}

TEST_CASE("CostVector keeps exact decimal values") {
  const CostVector w({Rational(18, 100), Rational(18, 100), Rational(31, 100)});
  CHECK(w.exact(2) == Rational(31, 100));
  CHECK(w[0] == 0.18);
  CHECK_FALSE(w.all_equal());
  const DyadicPmf d({1, 2, 2});
  CHECK(w.exact_average(d) == Rational(18, 200) + Rational(18, 400) + Rational(31, 400));
  CHECK(exact_average_cost(d, w) == w.exact_average(d));
  CHECK(average_cost(d, w) == doctest::Approx(0.2125));
  CHECK(kind_of([] { CostVector(std::vector<Rational>{Rational(-1), Rational(1)}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Kronecker extension order and values") {
  const Pmf t = make({0.5, 0.3, 0.2});
  const Pmf t2 = kronecker_pmf(t, 2);
  REQUIRE(t2.size() == 9);
  // first symbol most significant
  CHECK(t2[1] == doctest::Approx(0.5 * 0.3));
  CHECK(t2[3] == doctest::Approx(0.3 * 0.5));
  CHECK(t2.probs().sum() == doctest::Approx(1.0).epsilon(1e-15));

  const CostVector w({Rational(18, 100), Rational(18, 100), Rational(31, 100)});
  const CostVector v3 = kronecker_cost(w, 3);
  REQUIRE(v3.size() == 27);
  for (Index b = 0; b < 27; ++b) {
    Rational sum = 0;
    for (Index s : block_digits(b, 3, 3)) sum += w.exact(s);
    CHECK(v3.exact(b) == sum);
    CHECK(v3[b] == to_double(sum));
  }
  // permuted blocks share the same double
  CHECK(v3[2] == v3[6]);
  CHECK(v3[2] == v3[18]);

  CHECK(kind_of([&] { (void)kronecker_pmf(t, 20, 1000); }) == ErrorKind::SizeCap);
  CHECK(kind_of([&] { (void)kronecker_cost(w, 20, 1000); }) == ErrorKind::SizeCap);
  CHECK(block_digits(5, 3, 3) == std::vector<Index>{0, 1, 2});
}

TEST_CASE("average_cost of a Kronecker pmf is k times the base cost") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const Pmf t(oracle::random_pmf(rng, m));
    const auto wv = oracle::random_weights(rng, m);
    const CostVector w(Eigen::Map<const Eigen::VectorXd>(wv.data(), m).eval());
    for (int k = 1; k <= 4; ++k)
      CHECK(average_cost(kronecker_pmf(t, k), kronecker_cost(w, k)) ==
            doctest::Approx(k * average_cost(t, w)).epsilon(1e-12));
  }
}
