#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "chshq/errors.hpp"

namespace chshq {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline Integer numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denom(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer floor(const Rational& r) {
  Integer q = numer(r) / denom(r);  // truncates toward zero
  if (numer(r) < 0 && q * denom(r) != numer(r)) --q;
  return q;
}

inline Integer ceil(const Rational& r) {
  Integer q = numer(r) / denom(r);
  if (numer(r) > 0 && q * denom(r) != numer(r)) ++q;
  return q;
}

/// "num/den" or a plain integer. Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Integer {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw ParseError("malformed rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') {
        throw ParseError("malformed rational '" + std::string(text) + "'");
      }
    }
    return Integer(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const Integer num = parse_int(text.substr(0, slash));
  const Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

/// Always "num/den", also for integers ("1/1"), so files and CSV columns
/// have one shape.
inline std::string to_string(const Rational& r) {
  return numer(r).str() + "/" + denom(r).str();
}

}  // namespace chshq
