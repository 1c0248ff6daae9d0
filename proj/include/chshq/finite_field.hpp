#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "chshq/errors.hpp"

namespace chshq {

/// Element code: base-p digits are the polynomial coefficients, constant
/// term least significant. Codes are dense in [0, q).
using Code = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = 10000;

namespace detail {

// Dense polynomials over GF(p), index = degree.
using Poly = std::vector<int>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int inv_mod_prime(int a, int p) {
  // p is small (<= 10^4), Fermat is fine.
  long long result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(result);
}

inline Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod_prime(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int factor = a.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i) {
      a[shift + i] = ((a[shift + i] - factor * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

/// Naive irreducibility: no monic factor of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; d <= deg / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long t = 0; t < count; ++t) {
      Poly g(d + 1);
      long long v = t;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct PrimePower {
  int p;
  int k;
};

inline PrimePower factor_prime_power(std::uint64_t q) {
  if (q < 2) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  int k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
  return {static_cast<int>(p), k};
}

}  // namespace detail

class FieldElement;

/// The finite field GF(p^k), realised as GF(p)[x] / (modulus).
///
/// Instances are interned: make_field and field_with_modulus hand out
/// references with static lifetime, so element handles can hold a plain
/// pointer and field identity is pointer identity. Immutable after
/// construction and safe to share across threads.
class FieldSpec {
 public:
  int p() const { return p_; }
  int k() const { return k_; }
  Code q() const { return q_; }
  /// k coefficients, constant term first, leading 1 omitted; [0] for k = 1.
  const std::vector<int>& modulus() const { return modulus_; }

  Code add(Code a, Code b) const {
    if (k_ == 1) return (a + b) % q_;
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return digitwise(a, b, +1);
  }
  Code sub(Code a, Code b) const {
    if (k_ == 1) return (a + q_ - b) % q_;
    return digitwise(a, b, -1);
  }
  Code neg(Code a) const { return sub(0, a); }
  Code mul(Code a, Code b) const {
    if (k_ == 1) return static_cast<Code>(std::uint64_t{a} * b % q_);
    if (a == 0 || b == 0) return 0;
    const Code e = log_[a] + log_[b];
    return exp_[e >= q_ - 1 ? e - (q_ - 1) : e];
  }
  Code inv(Code a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (k_ == 1) return static_cast<Code>(detail::inv_mod_prime(static_cast<int>(a), p_));
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  FieldElement element(Code code) const;
  FieldElement zero() const;
  FieldElement one() const;

  /// Reference implementation of multiplication by polynomial reduction.
  /// Used to build the log tables and by tests as an independent route.
  Code poly_mul(Code a, Code b) const {
    detail::Poly pa = digits(a), pb = digits(b);
    detail::Poly prod(pa.size() + pb.size(), 0);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = 0; j < pb.size(); ++j) {
        prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
      }
    }
    detail::Poly m(modulus_.begin(), modulus_.end());
    if (k_ == 1) m = {0};
    m.push_back(1);
    return from_digits(detail::poly_mod(prod, m, p_));
  }

 private:
  friend const FieldSpec& field_with_modulus(int, int, const std::vector<int>&);

  FieldSpec(int p, int k, std::vector<int> modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {
    q_ = 1;
    for (int i = 0; i < k_; ++i) q_ *= static_cast<Code>(p_);
    if (k_ > 1) build_tables();
  }

  detail::Poly digits(Code a) const {
    detail::Poly d;
    for (int i = 0; i < k_; ++i) {
      d.push_back(static_cast<int>(a % p_));
      a /= p_;
    }
    detail::trim(d);
    return d;
  }

  Code from_digits(const detail::Poly& d) const {
    Code code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p_ + static_cast<Code>(d[i]);
    return code;
  }

  Code digitwise(Code a, Code b, int sign) const {
    Code out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      const int da = static_cast<int>(a % p_), db = static_cast<int>(b % p_);
      out += scale * static_cast<Code>(((da + sign * db) % p_ + p_) % p_);
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  void build_tables() {
    // Find the smallest primitive element and tabulate its powers.
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (Code g = 2; g < q_; ++g) {
      Code x = 1;
      Code order = 0;
      do {
        x = poly_mul(x, g);
        ++order;
      } while (x != 1 && order < q_);
      if (order != q_ - 1) continue;
      x = 1;
      for (Code e = 0; e < q_ - 1; ++e) {
        exp_[e] = x;
        log_[x] = e;
        x = poly_mul(x, g);
      }
      break;
    }
    if (q_ <= 256) {
      add_table_.resize(std::size_t{q_} * q_);
      for (Code a = 0; a < q_; ++a)
        for (Code b = 0; b < q_; ++b) add_table_[a * q_ + b] = digitwise(a, b, +1);
    }
  }

  int p_;
  int k_;
  Code q_;
  std::vector<int> modulus_;
  std::vector<Code> exp_;
  std::vector<Code> log_;
  std::vector<Code> add_table_;
};

/// Value handle for one element of an interned field.
class FieldElement {
 public:
  FieldElement(const FieldSpec& spec, Code code) : spec_(&spec), code_(code) {
    if (code >= spec.q()) throw Error("element code " + std::to_string(code) + " out of range");
  }

  const FieldSpec& spec() const { return *spec_; }
  Code code() const { return code_; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.spec_ == b.spec_ && a.code_ == b.code_;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {*a.spec_, a.spec_->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {*a.spec_, a.spec_->sub(a.code_, b.code_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {*a.spec_, a.spec_->mul(a.code_, b.code_)};
  }
  FieldElement operator-() const { return {*spec_, spec_->neg(code_)}; }
  FieldElement inv() const { return {*spec_, spec_->inv(code_)}; }

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ != b.spec_) throw MixedFields();
  }

  const FieldSpec* spec_;
  Code code_;
};

inline FieldElement FieldSpec::element(Code code) const { return {*this, code}; }
inline FieldElement FieldSpec::zero() const { return {*this, 0}; }
inline FieldElement FieldSpec::one() const { return {*this, 1}; }

inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement sub(const FieldElement& a, const FieldElement& b) { return a - b; }
inline FieldElement neg(const FieldElement& a) { return -a; }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement inv(const FieldElement& a) { return a.inv(); }

/// Interns GF(p^k) with an explicit modulus (k coefficients, constant term
/// first). The modulus must be irreducible; for k = 1 it must be [0].
inline const FieldSpec& field_with_modulus(int p, int k, const std::vector<int>& modulus) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, std::vector<int>>, std::unique_ptr<FieldSpec>> registry;

  if (p < 2 || k < 1) throw NotAPrimePower("invalid field parameters");
  if (detail::factor_prime_power(static_cast<std::uint64_t>(p)).k != 1) {
    throw NotAPrimePower("characteristic " + std::to_string(p) + " is not prime");
  }
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxFieldOrder) throw TooLarge("field order exceeds " + std::to_string(kMaxFieldOrder));
  }
  if (k == 1) {
    if (modulus != std::vector<int>{0}) throw Error("prime field modulus must be [0]");
  } else {
    if (static_cast<int>(modulus.size()) != k) throw Error("modulus must have k coefficients");
    for (int c : modulus) {
      if (c < 0 || c >= p) throw Error("modulus coefficient out of range");
    }
    detail::Poly f(modulus.begin(), modulus.end());
    f.push_back(1);
    if (!detail::is_irreducible(f, p)) throw Error("modulus is not irreducible");
  }

  std::lock_guard lock(mutex);
  auto key = std::make_tuple(p, k, modulus);
  auto it = registry.find(key);
  if (it == registry.end()) {
    it = registry.emplace(key, std::unique_ptr<FieldSpec>(new FieldSpec(p, k, modulus))).first;
  }
  return *it->second;
}

/// GF(q) with the lexicographically smallest monic irreducible modulus:
/// coefficient tuples (c0, ..., c_{k-1}) compared with c0 first.
inline const FieldSpec& make_field(std::uint64_t q) {
  const auto [p, k] = detail::factor_prime_power(q);
  if (q > kMaxFieldOrder) throw TooLarge("field order exceeds " + std::to_string(kMaxFieldOrder));
  if (k == 1) return field_with_modulus(p, 1, {0});

  const std::uint64_t count = q;
  for (std::uint64_t t = 0; t < count; ++t) {
    // t enumerates tuples with c0 as the most significant digit.
    std::vector<int> coeffs(k);
    std::uint64_t v = t;
    for (int i = k - 1; i >= 0; --i) {
      coeffs[i] = static_cast<int>(v % p);
      v /= p;
    }
    if (coeffs[0] == 0) continue;
    detail::Poly f(coeffs.begin(), coeffs.end());
    f.push_back(1);
    if (detail::is_irreducible(f, p)) return field_with_modulus(p, k, coeffs);
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime powers
}

inline bool is_prime_power(std::uint64_t q) {
  try {
    detail::factor_prime_power(q);
    return true;
  } catch (const NotAPrimePower&) {
    return false;
  }
}

/// Codes 0, 1, ..., q-1.
inline std::vector<FieldElement> enumerate_elements(const FieldSpec& spec) {
  std::vector<FieldElement> out;
  out.reserve(spec.q());
  for (Code c = 0; c < spec.q(); ++c) out.emplace_back(spec, c);
  return out;
}

}  // namespace chshq
