#pragma once

// Exact integer helpers: p-adic valuations, base-p digits, carry-free
// trinomial index sets and their scalar coefficients, and the half-integer
// extended values used by filtrations.

#include "skewps/field.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace skewps {

// ---------------------------------------------------------------------------
// Extended half-integers
// ---------------------------------------------------------------------------

/// A value in (1/2)Z or +infinity, stored as a doubled integer.
class ExtInt {
public:
  constexpr ExtInt() = default;

  static constexpr ExtInt infinity() { return ExtInt(kInf); }
  static constexpr ExtInt from_int(std::int64_t n) { return ExtInt(2 * n); }
  static constexpr ExtInt from_halves(std::int64_t h) { return ExtInt(h); }

  constexpr bool is_infinite() const { return halves_ == kInf; }
  /// Twice the value; only meaningful when finite.
  constexpr std::int64_t halves() const { return halves_; }
  constexpr bool is_integer() const { return !is_infinite() && halves_ % 2 == 0; }

  /// Smallest integer >= value.
  std::int64_t ceil() const {
    if (is_infinite()) throw MathError("ceil of infinity");
    return halves_ >= 0 ? (halves_ + 1) / 2 : -((-halves_) / 2);
  }
  /// Largest integer <= value.
  std::int64_t floor() const {
    if (is_infinite()) throw MathError("floor of infinity");
    return halves_ >= 0 ? halves_ / 2 : -((-halves_ + 1) / 2);
  }

  friend constexpr ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtInt(a.halves_ + b.halves_);
  }
  /// a - b for finite b; infinity absorbs.
  friend ExtInt operator-(ExtInt a, ExtInt b) {
    if (b.is_infinite()) throw MathError("subtracting infinity");
    if (a.is_infinite()) return infinity();
    return ExtInt(a.halves_ - b.halves_);
  }
  friend constexpr auto operator<=>(ExtInt a, ExtInt b) = default;

  std::string str() const {
    if (is_infinite()) return "inf";
    if (halves_ % 2 == 0) return std::to_string(halves_ / 2);
    return std::to_string(halves_) + "/2";
  }
  friend std::ostream& operator<<(std::ostream& os, ExtInt v) { return os << v.str(); }

private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  constexpr explicit ExtInt(std::int64_t h) : halves_(h) {}
  std::int64_t halves_ = 0;
};

// ---------------------------------------------------------------------------
// Valuations and binomials
// ---------------------------------------------------------------------------

/// Largest e with p^e | n. Throws for n = 0.
inline unsigned vp(const BigInt& n, std::int64_t p) {
  if (n == 0) throw MathError("valuation of zero");
  if (!is_prime(p)) throw MathError("vp: " + std::to_string(p) + " is not prime");
  BigInt m = abs(n);
  unsigned e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  return e;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigInt factorial(std::int64_t n) {
  BigInt r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// n! / (i! j! k!) with n = i + j + k.
inline BigInt multinomial(std::int64_t i, std::int64_t j, std::int64_t k) {
  return binomial(i + j + k, i) * binomial(j + k, j);
}

inline BigInt ipow(std::int64_t p, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

/// Checks vp(binom(p^n, i)) == n - vp(i) with exact binomials.
inline bool binom_valuation_check(unsigned n, std::int64_t i, std::int64_t p) {
  BigInt q = ipow(p, n);
  if (i < 1 || BigInt(i) > q) throw MathError("binom_valuation_check: need 1 <= i <= p^n");
  BigInt b = binomial(static_cast<std::int64_t>(q), i);
  return static_cast<std::int64_t>(vp(b, p)) == static_cast<std::int64_t>(n) - static_cast<std::int64_t>(vp(i, p));
}

// ---------------------------------------------------------------------------
// Base-p digits
// ---------------------------------------------------------------------------

/// Little-endian base-p expansion with no trailing zeros.
struct Digits {
  std::int64_t base = 2;
  std::vector<std::int64_t> entries;

  std::int64_t at(std::size_t i) const { return i < entries.size() ? entries[i] : 0; }

  BigInt value() const {
    BigInt v = 0;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) v = v * base + *it;
    return v;
  }

  bool operator==(const Digits&) const = default;
};

inline Digits digits(std::int64_t n, std::int64_t p) {
  if (n < 0) throw MathError("digits of a negative integer");
  if (!is_prime(p)) throw MathError("digits: base " + std::to_string(p) + " is not prime");
  Digits d{p, {}};
  while (n > 0) {
    d.entries.push_back(n % p);
    n /= p;
  }
  return d;
}

inline bool no_common_component(const Digits& a, const Digits& b) {
  if (a.base != b.base) throw MathError("digit expansions in different bases");
  std::size_t len = std::min(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < len; ++i)
    if (a.entries[i] != 0 && b.entries[i] != 0) return false;
  return true;
}

/// True iff [i] + [j] + [k] = [i+j+k] digitwise, i.e. no carries occur.
inline bool carry_free(std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t p) {
  while (i > 0 || j > 0 || k > 0) {
    if (i % p + j % p + k % p >= p) return false;
    i /= p;
    j /= p;
    k /= p;
  }
  return true;
}

using Triple = std::array<std::int64_t, 3>;

/// All (i, j, k) with [i] + [j] + [k] = [n], in lexicographic order.
inline std::vector<Triple> trinomial_indices(std::int64_t n, std::int64_t p) {
  Digits dn = digits(n, p);
  // Per digit slot: every way to split a_t as u + v + w.
  std::vector<Triple> out{{0, 0, 0}};
  std::int64_t place = 1;
  for (std::int64_t a : dn.entries) {
    std::vector<Triple> next;
    for (const Triple& t : out)
      for (std::int64_t u = 0; u <= a; ++u)
        for (std::int64_t v = 0; u + v <= a; ++v) {
          std::int64_t w = a - u - v;
          next.push_back({t[0] + u * place, t[1] + v * place, t[2] + w * place});
        }
    out = std::move(next);
    place *= p;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The coefficient of the carry-free trinomial expansion: the product over
/// digit slots of multinomial(a_t; u_t, v_t, w_t), reduced mod p.
inline std::int64_t alpha_coeff(std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t p) {
  if (i < 0 || j < 0 || k < 0) throw MathError("alpha_coeff: negative index");
  if (!carry_free(i, j, k, p)) throw MathError("alpha_coeff: carries present");
  std::int64_t r = 1;
  while (i > 0 || j > 0 || k > 0) {
    BigInt m = multinomial(i % p, j % p, k % p) % p;
    r = (r * static_cast<std::int64_t>(m)) % p;
    i /= p;
    j /= p;
    k /= p;
  }
  return r;
}

// ---------------------------------------------------------------------------
// q-factorial
// ---------------------------------------------------------------------------

/// {n!}_q = prod_{m=1}^{n} (1 + q + ... + q^{m-1}) in a ring with the
/// surface one()/add()/mul()/is_central(). Rejects non-central q.
template <class Ring, class Elem>
Elem qfactorial(const Ring& ring, const Elem& q, unsigned n) {
  if (!ring.is_central(q)) throw MathError("qfactorial: q is not central");
  Elem result = ring.one();
  Elem partial = ring.one(); // 1 + q + ... + q^{m-1}
  Elem qpow = ring.one();
  for (unsigned m = 1; m <= n; ++m) {
    if (m > 1) {
      qpow = ring.mul(qpow, q);
      partial = ring.add(partial, qpow);
    }
    result = ring.mul(result, partial);
  }
  return result;
}

/// Adapter exposing a coefficient field as a ring for qfactorial.
template <Field F>
struct ScalarRing {
  F field;
  using value_type = typename F::value_type;
  value_type one() const { return field.one(); }
  value_type add(const value_type& a, const value_type& b) const { return field.add(a, b); }
  value_type mul(const value_type& a, const value_type& b) const { return field.mul(a, b); }
  bool is_central(const value_type&) const { return true; }
};

} // namespace skewps
