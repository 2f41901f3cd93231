#pragma once

// Exact arithmetic used wherever a comparison must not depend on rounding:
// Kraft sums and average costs of dyadic pmfs.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace dyad {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "0.2063", "-1.5e-3", "7" or "1/3" into an exact rational.
/// Throws Error(Parse) on malformed input.
Rational parse_rational(std::string_view text);

/// The exact value of a finite double (every double is a dyadic rational).
Rational to_rational(double x);

double to_double(const Rational& r);

/// Finite decimal expansion when the denominator is of the form 2^a 5^b,
/// otherwise "p/q". parse_rational(to_string(r)) == r always holds.
std::string to_string(const Rational& r);

/// 2^-exponent as an exact rational, exponent >= 0.
Rational pow2_neg(int exponent);

}  // namespace dyad
