#include "dyad/exact.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "dyad/error.hpp"

namespace dyad {

namespace {

BigInt pow10(int n) {
  BigInt r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

[[noreturn]] void bad_number(std::string_view text, const std::string& why) {
  fail(ErrorKind::Parse, "malformed number '" + std::string(text) + "': " + why);
}

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) bad_number(whole, "missing digits");
  BigInt r = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) bad_number(whole, "unexpected character");
    r = r * 10 + (c - '0');
  }
  return r;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (exp_part.empty() || exp_part.size() > 6) bad_number(whole, "bad exponent");
    exponent = static_cast<int>(parse_integer(exp_part, whole));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }

  std::string digits;
  int fraction_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(whole, "missing digits");
    digits.append(int_part);
    digits.append(frac_part);
    fraction_digits = static_cast<int>(frac_part.size());
  } else {
    digits.assign(text);
  }

  Rational r(parse_integer(digits, whole));
  const int scale = exponent - fraction_digits;
  if (scale >= 0)
    r *= Rational(pow10(scale));
  else
    r /= Rational(pow10(-scale));
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_number(whole, "empty");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash), whole);
    Rational den = parse_decimal(text.substr(slash + 1), whole);
    if (den == 0) bad_number(whole, "zero denominator");
    return num / den;
  }
  return parse_decimal(text, whole);
}

Rational to_rational(double x) {
  require(std::isfinite(x), "cannot convert a non-finite value to a rational");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  // 53-bit integer mantissa
  const auto m = static_cast<long long>(std::ldexp(mant, 53));
  Rational r{BigInt(m)};
  const int shift = exp - 53;
  if (shift >= 0)
    r *= Rational(BigInt(1) << shift);
  else
    r /= Rational(BigInt(1) << -shift);
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);

  int twos = 0, fives = 0;
  BigInt rest = den;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  const int digits = std::max(twos, fives);
  // num/den = num * (10^digits / den) / 10^digits
  BigInt scaled = num * (pow10(digits) / den);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

Rational pow2_neg(int exponent) {
  return Rational(BigInt(1), BigInt(1) << exponent);
}

}  // namespace dyad
