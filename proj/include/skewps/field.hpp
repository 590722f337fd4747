#pragma once

// Coefficient domains: the prime field F_p, the rationals, and Z/p^k.
//
// Every domain is a small descriptor object carrying the runtime modulus;
// elements are plain values and all arithmetic goes through the descriptor,
// in the style of NTL's ZZ_p contexts but without global state.

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace skewps {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for any violated mathematical precondition.
class MathError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Common surface of a commutative coefficient ring.
template <class R>
concept CoeffRing = requires(const R& r, typename R::value_type a, long long n) {
  { r.zero() } -> std::convertible_to<typename R::value_type>;
  { r.one() } -> std::convertible_to<typename R::value_type>;
  { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.sub(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.neg(a) } -> std::convertible_to<typename R::value_type>;
  { r.from_int(n) } -> std::convertible_to<typename R::value_type>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.characteristic() } -> std::convertible_to<std::int64_t>;
  { r.to_string(a) } -> std::convertible_to<std::string>;
};

/// A coefficient ring that is a field.
template <class F>
concept Field = CoeffRing<F> && requires(const F& f, typename F::value_type a) {
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
};

/// Z/mZ for m = p^k, elements normalised to [0, m).
class ModRing {
public:
  using value_type = std::int64_t;

  ModRing() : ModRing(2, 1) {}
  ModRing(std::int64_t p, int k) : p_(p), k_(k), m_(1) {
    if (!is_prime(p)) throw MathError("modulus base " + std::to_string(p) + " is not prime");
    if (k < 1) throw MathError("exponent k must be >= 1");
    for (int i = 0; i < k; ++i) {
      if (m_ > (std::int64_t{1} << 31) / p) throw MathError("p^k too large");
      m_ *= p;
    }
  }

  std::int64_t prime() const { return p_; }
  int exponent() const { return k_; }
  std::int64_t modulus() const { return m_; }
  std::int64_t characteristic() const { return m_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % m_; }
  value_type norm(std::int64_t a) const {
    a %= m_;
    return a < 0 ? a + m_ : a;
  }
  value_type from_int(long long n) const { return norm(static_cast<std::int64_t>(n % m_)); }
  value_type from_big(const BigInt& n) const {
    BigInt r = n % m_;
    if (r < 0) r += m_;
    return static_cast<std::int64_t>(r);
  }
  value_type add(value_type a, value_type b) const { return norm(a + b); }
  value_type sub(value_type a, value_type b) const { return norm(a - b); }
  value_type neg(value_type a) const { return norm(-a); }
  value_type mul(value_type a, value_type b) const { return norm(a * b); }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a % p_ != 0; }

  /// Inverse of a unit of Z/p^k.
  value_type inv(value_type a) const {
    if (!is_unit(a)) throw MathError("element " + std::to_string(a) + " is not a unit mod " + std::to_string(m_));
    std::int64_t g = m_, x = 0, y = 1, r = norm(a);
    while (r != 0) {
      std::int64_t q = g / r;
      std::tie(g, r) = std::make_pair(r, g - q * r);
      std::tie(x, y) = std::make_pair(y, x - q * y);
    }
    return norm(x);
  }

  /// p-adic valuation of a residue; k for zero.
  int valuation(value_type a) const {
    a = norm(a);
    if (a == 0) return k_;
    int v = 0;
    while (a % p_ == 0) {
      a /= p_;
      ++v;
    }
    return v;
  }

  std::string to_string(value_type a) const { return std::to_string(a); }
  bool operator==(const ModRing&) const = default;

private:
  std::int64_t p_;
  int k_;
  std::int64_t m_;
};

/// The prime field F_p.
class PrimeField : public ModRing {
public:
  PrimeField() : ModRing(2, 1) {}
  explicit PrimeField(std::int64_t p) : ModRing(p, 1) {}
  bool operator==(const PrimeField&) const = default;
};

/// The rational numbers, exact.
class RationalField {
public:
  using value_type = Rational;

  std::int64_t characteristic() const { return 0; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long n) const { return n; }
  value_type from_big(const BigInt& n) const { return Rational(n); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw MathError("division by zero");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  std::string to_string(const value_type& a) const { return a.str(); }
  bool operator==(const RationalField&) const = default;
};

template <class F>
typename F::value_type power(const F& f, typename F::value_type a, std::uint64_t e) {
  typename F::value_type r = f.one();
  while (e > 0) {
    if (e & 1) r = f.mul(r, a);
    a = f.mul(a, a);
    e >>= 1;
  }
  return r;
}

} // namespace skewps
