#pragma once

// Univariate polynomials over a field (coefficients low-to-high) and a
// Kronecker-style factor search for integer polynomials, used to split
// commutative semisimple algebras over Q.

#include "skewps/field.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace skewps {

template <Field F>
using Poly = std::vector<typename F::value_type>;

template <Field F>
void poly_trim(const F& f, Poly<F>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <Field F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  poly_trim(f, r);
  return r;
}

template <Field F>
Poly<F> poly_sub(const F& f, Poly<F> a, const Poly<F>& b) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  poly_trim(f, a);
  return a;
}

/// Quotient and remainder of a by nonzero b.
template <Field F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& f, Poly<F> a, Poly<F> b) {
  poly_trim(f, a);
  poly_trim(f, b);
  if (b.empty()) throw MathError("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly<F> q(a.size() - b.size() + 1, f.zero());
  auto lead_inv = f.inv(b.back());
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    auto c = f.mul(a.back(), lead_inv);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = f.sub(a[i + shift], f.mul(c, b[i]));
    poly_trim(f, a);
  }
  poly_trim(f, q);
  return {q, a};
}

/// Returns (g, u, v) with u a + v b = g = gcd(a, b), g monic.
template <Field F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> poly_xgcd(const F& f, Poly<F> a, Poly<F> b) {
  Poly<F> u0{f.one()}, v0{}, u1{}, v1{f.one()};
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    auto [q, r] = poly_divmod(f, a, b);
    a = b;
    b = r;
    auto u2 = poly_sub(f, u0, poly_mul(f, q, u1));
    auto v2 = poly_sub(f, v0, poly_mul(f, q, v1));
    u0 = u1;
    v0 = v1;
    u1 = u2;
    v1 = v2;
  }
  if (a.empty()) return {a, u0, v0};
  auto li = f.inv(a.back());
  Poly<F> lc{li};
  return {poly_mul(f, a, lc), poly_mul(f, u0, lc), poly_mul(f, v0, lc)};
}

namespace detail {

inline std::vector<BigInt> positive_divisors(BigInt n) {
  n = abs(n);
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline BigInt eval_int(const std::vector<BigInt>& f, const BigInt& x) {
  BigInt r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
  return r;
}

} // namespace detail

/// Searches for a nontrivial factor of an integer polynomial (low-to-high
/// coefficients, nonzero leading term) by Kronecker's interpolation method.
/// Returns a factor of degree between 1 and deg/2, or nothing if f is
/// irreducible over Q. `budget` caps the number of candidate interpolants.
inline std::optional<std::vector<BigInt>> kronecker_factor(const std::vector<BigInt>& f, std::size_t budget = 2000000) {
  const int deg = static_cast<int>(f.size()) - 1;
  RationalField q;
  for (int k = 1; 2 * k <= deg; ++k) {
    // Evaluation points where f does not vanish.
    std::vector<BigInt> xs, vals;
    for (long long t = 0; static_cast<int>(xs.size()) < k + 1; ++t) {
      BigInt x = (t % 2 == 0) ? BigInt(t / 2) : BigInt(-(t + 1) / 2);
      BigInt v = detail::eval_int(f, x);
      if (v == 0) {
        // Linear factor (X - x).
        return std::vector<BigInt>{-x, 1};
      }
      xs.push_back(x);
      vals.push_back(v);
    }
    std::vector<std::vector<BigInt>> choices;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      auto ds = detail::positive_divisors(vals[i]);
      std::vector<BigInt> opts;
      for (const auto& d : ds) {
        opts.push_back(d);
        if (i > 0) opts.push_back(-d);
      }
      choices.push_back(std::move(opts));
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    std::size_t tried = 0;
    while (true) {
      if (++tried > budget) throw MathError("factor search budget exhausted");
      // Lagrange interpolation over Q.
      Poly<RationalField> g;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly<RationalField> term{Rational(choices[i][idx[i]])};
        for (std::size_t j = 0; j < xs.size(); ++j) {
          if (j == i) continue;
          Rational denom = Rational(xs[i] - xs[j]);
          term = poly_mul(q, term, Poly<RationalField>{Rational(-xs[j]) / denom, Rational(1) / denom});
        }
        if (g.size() < term.size()) g.resize(term.size(), 0);
        for (std::size_t t = 0; t < term.size(); ++t) g[t] += term[t];
      }
      poly_trim(q, g);
      if (static_cast<int>(g.size()) - 1 == k) {
        bool integral = std::all_of(g.begin(), g.end(), [](const Rational& c) { return denominator(c) == 1; });
        if (integral) {
          Poly<RationalField> fq;
          for (const auto& c : f) fq.push_back(Rational(c));
          auto [quo, rem] = poly_divmod(q, fq, g);
          if (rem.empty()) {
            std::vector<BigInt> out;
            for (const auto& c : g) out.push_back(numerator(c));
            return out;
          }
        }
      }
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return std::nullopt;
}

/// Clears denominators and content of a rational polynomial.
inline std::vector<BigInt> primitive_integer_poly(const Poly<RationalField>& p) {
  BigInt l = 1;
  for (const auto& c : p) l = boost::multiprecision::lcm(l, BigInt(denominator(c)));
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& c : p) {
    BigInt v = numerator(c) * (l / denominator(c));
    out.push_back(v);
    g = boost::multiprecision::gcd(g, v);
  }
  if (g != 0)
    for (auto& c : out) c /= g;
  return out;
}

} // namespace skewps
