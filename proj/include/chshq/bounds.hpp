#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "chshq/errors.hpp"
#include "chshq/rational.hpp"

namespace chshq {

inline constexpr int kDefaultPrecisionBits = 50;

/// Precision for irrational quantities; CHSHQ_PRECISION_BITS overrides.
inline int precision_bits() {
  if (const char* env = std::getenv("CHSHQ_PRECISION_BITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 8 && v <= 4096) return static_cast<int>(v);
    throw ParseError(std::string("CHSHQ_PRECISION_BITS must be an integer in [8, 4096], got '") +
                     env + "'");
  }
  return kDefaultPrecisionBits;
}

/// A real number known to lie in [lower, upper], both exact rationals.
/// lower == upper means the value is exactly rational.
struct RealEnclosure {
  Rational lower;
  Rational upper;

  bool exact() const { return lower == upper; }
  double approx() const { return static_cast<double>(upper); }

  /// The upper end rounded up to `digits` decimal places.
  std::string decimal(int digits = 12) const {
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Integer scaled = ceil(upper * scale);
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.str();
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return negative ? "-" + s : s;
  }

  friend RealEnclosure operator+(const RealEnclosure& a, const Rational& b) {
    return {a.lower + b, a.upper + b};
  }
};

/// sqrt(v) for rational v >= 0, with relative width at most 2^-bits.
inline RealEnclosure sqrt_enclosure(const Rational& v, int bits) {
  if (v < 0) throw Error("square root of a negative number");
  if (v == 0) return {Rational(0), Rational(0)};
  // sqrt(a/b) = sqrt(a*b) / b; scale by 4^B before the integer root.
  const Integer a = numer(v), b = denom(v);
  const unsigned extra = static_cast<unsigned>(bits) + boost::multiprecision::msb(b) + 2;
  const Integer radicand = (a * b) << (2 * extra);
  const Integer root = boost::multiprecision::sqrt(radicand);
  const Integer den = b << extra;
  const Rational lower(root, den);
  const Rational upper = root * root == radicand ? lower : Rational(root + 1, den);
  return {lower, upper};
}

/// p + sqrt(2/q).
inline RealEnclosure chakraborty_bound(std::int64_t q, const Rational& p, int bits = precision_bits()) {
  if (q < 2) throw Error("chakraborty_bound needs q >= 2");
  if (p <= 0 || p > 1) throw Error("p must lie in (0, 1]");
  return sqrt_enclosure(Rational(2, q), bits) + p;
}

/// The bound is trivially true when it is at least 1.
inline bool is_vacuous(const RealEnclosure& bound) { return bound.lower >= 1; }

inline std::int64_t ceil_inverse(const Rational& p) {
  return static_cast<std::int64_t>(ceil(Rational(1) / p));
}

/// q >= n(n-1)/2 with n = ceil(1/p).
inline bool thm1_regime(std::int64_t q, const Rational& p) {
  const std::int64_t n = ceil_inverse(p);
  return 2 * q >= n * (n - 1);
}

/// p + ((n-1)/q)(1 - np/2), n = ceil(1/p).
inline Rational thm1_bound(std::int64_t q, const Rational& p) {
  if (q < 1 || p <= 0 || p > 1) throw Error("thm1_bound needs q >= 1 and p in (0, 1]");
  const std::int64_t n = ceil_inverse(p);
  if (!thm1_regime(q, p)) {
    throw OutOfRegime("needs q >= n(n-1)/2 (q=" + std::to_string(q) + ", n=" + std::to_string(n) + ")");
  }
  return p + Rational(n - 1, q) * (1 - n * p / 2);
}

/// 2 p^2 q >= 1, the exact form of p >= 1/sqrt(2q).
inline bool corollary_regime(std::int64_t q, const Rational& p) { return 2 * p * p * q >= 1; }

/// p + 1/(2pq).
inline Rational corollary_bound(std::int64_t q, const Rational& p) {
  if (q < 1 || p <= 0 || p > 1) throw Error("corollary_bound needs q >= 1 and p in (0, 1]");
  if (!corollary_regime(q, p)) {
    throw OutOfRegime("needs 2 p^2 q >= 1 (q=" + std::to_string(q) + ", p=" + to_string(p) + ")");
  }
  return p + 1 / (2 * p * q);
}

/// (sqrt(1 + 8q) - 1) / (4q): the positive root of 2 p^2 q + p - 1.
inline RealEnclosure validity_threshold(std::int64_t q, int bits = precision_bits()) {
  if (q < 1) throw Error("validity_threshold needs q >= 1");
  const auto root = sqrt_enclosure(Rational(1 + 8 * q), bits + 4);
  return {(root.lower - 1) / (4 * q), (root.upper - 1) / (4 * q)};
}

}  // namespace chshq
