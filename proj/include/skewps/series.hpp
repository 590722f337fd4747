#pragma once

// Coefficient bases for skew power series rings. SeriesBase is
// Z/p^k[t]/(t^T) with sigma and delta given on t and the filtration
// w(c t^b) = v_p(c) + b. AlgebraBase wraps a finite-dimensional algebra with a
// filtration and a skew derivation. Both expose the same surface, consumed by
// SPSRing.

#include "skewps/coeff.hpp"
#include "skewps/field.hpp"
#include "skewps/filtration.hpp"
#include "skewps/finalg.hpp"
#include "skewps/skewder.hpp"

#include <concepts>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace skewps {

template <class B>
concept BaseRing = requires(const B& b, const typename B::Elem& a, const BigInt& n, ExtInt mu, std::mt19937_64& rng) {
  { b.zero() } -> std::same_as<typename B::Elem>;
  { b.one() } -> std::same_as<typename B::Elem>;
  { b.add(a, a) } -> std::same_as<typename B::Elem>;
  { b.sub(a, a) } -> std::same_as<typename B::Elem>;
  { b.mul(a, a) } -> std::same_as<typename B::Elem>;
  { b.scale_int(n, a) } -> std::same_as<typename B::Elem>;
  { b.is_zero(a) } -> std::same_as<bool>;
  { b.sigma(a) } -> std::same_as<typename B::Elem>;
  { b.delta(a) } -> std::same_as<typename B::Elem>;
  { b.value(a) } -> std::same_as<ExtInt>;
  { b.truncate(a, mu) } -> std::same_as<typename B::Elem>;
  { b.to_string(a) } -> std::same_as<std::string>;
  { b.random(rng) } -> std::same_as<typename B::Elem>;
  { b.gr_dim(mu) } -> std::same_as<std::size_t>;
  { b.is_compatible() } -> std::same_as<bool>;
  { b.is_sigma_minus_id() } -> std::same_as<bool>;
  { b.residue_characteristic() } -> std::same_as<std::int64_t>;
  { b.is_field_of_char_p() } -> std::same_as<bool>;
};

// ---------------------------------------------------------------------------
// Z/p^k[t]/(t^T)
// ---------------------------------------------------------------------------

class SeriesBase {
public:
  using Elem = std::vector<std::int64_t>;

  SeriesBase() = default;

  /// sigma(t) must lie in (t) with unit linear coefficient; delta(t) in (t).
  SeriesBase(ModRing ring, std::size_t T, Elem sigma_t, Elem delta_t)
      : ring_(ring), T_(T), sigma_t_(std::move(sigma_t)), delta_t_(std::move(delta_t)) {
    if (T_ < 2) throw MathError("series base: T must be at least 2");
    sigma_t_ = normalize(sigma_t_);
    delta_t_ = normalize(delta_t_);
    if (sigma_t_[0] != 0) throw MathError("series base: sigma(t) must lie in (t)");
    if (!ring_.is_unit(sigma_t_[1])) throw MathError("series base: sigma(t) must have a unit linear coefficient");
    if (delta_t_[0] != 0) throw MathError("series base: delta(t) must lie in (t)");
    sigma_mon_.push_back(one());
    delta_mon_.push_back(zero());
    for (std::size_t b = 1; b < T_; ++b) {
      // delta(t^b) = delta(t^{b-1}) t + sigma(t^{b-1}) delta(t)
      delta_mon_.push_back(add(mul(delta_mon_.back(), monomial(1)), mul(sigma_mon_.back(), delta_t_)));
      sigma_mon_.push_back(mul(sigma_mon_.back(), sigma_t_));
    }
  }

  const ModRing& ring() const { return ring_; }
  std::size_t T() const { return T_; }
  std::int64_t p() const { return ring_.prime(); }
  unsigned k() const { return ring_.exponent(); }
  const Elem& sigma_t() const { return sigma_t_; }
  const Elem& delta_t() const { return delta_t_; }

  Elem zero() const { return Elem(T_, 0); }
  Elem one() const { return monomial(0); }
  Elem monomial(std::size_t b, std::int64_t c = 1) const {
    Elem e = zero();
    if (b < T_) e[b] = ring_.from_int(c);
    return e;
  }

  Elem normalize(Elem a) const {
    if (a.size() > T_) a.resize(T_);
    a.resize(T_, 0);
    for (auto& c : a) c = ring_.from_int(c);
    return a;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(T_);
    for (std::size_t i = 0; i < T_; ++i) r[i] = ring_.add(a[i], b[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(T_);
    for (std::size_t i = 0; i < T_; ++i) r[i] = ring_.sub(a[i], b[i]);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (std::size_t i = 0; i < T_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; i + j < T_; ++j) r[i + j] = ring_.add(r[i + j], ring_.mul(a[i], b[j]));
    }
    return r;
  }
  Elem scale_int(const BigInt& n, const Elem& a) const {
    auto c = ring_.from_big(n);
    Elem r(T_);
    for (std::size_t i = 0; i < T_; ++i) r[i] = ring_.mul(c, a[i]);
    return r;
  }
  bool is_zero(const Elem& a) const {
    for (auto c : a)
      if (c != 0) return false;
    return true;
  }

  Elem sigma(const Elem& a) const { return linear(sigma_mon_, a); }
  Elem delta(const Elem& a) const { return linear(delta_mon_, a); }

  /// min over terms of v_p(c) + b; infinity for 0.
  ExtInt value(const Elem& a) const {
    ExtInt best = ExtInt::infinity();
    for (std::size_t b = 0; b < T_; ++b)
      if (a[b] != 0) best = std::min(best, ExtInt::from_int(static_cast<std::int64_t>(ring_.valuation(a[b]) + b)));
    return best;
  }

  /// Canonical representative modulo F_mu: keeps c t^b only while v_p(c) + b < mu.
  Elem truncate(const Elem& a, ExtInt mu) const {
    if (mu.is_infinite()) return a;
    Elem r = zero();
    const std::int64_t top = mu.ceil();
    for (std::size_t b = 0; b < T_; ++b) {
      std::int64_t e = top - static_cast<std::int64_t>(b);
      if (e <= 0) continue;
      if (e >= static_cast<std::int64_t>(k())) {
        r[b] = a[b];
      } else {
        std::int64_t m = static_cast<std::int64_t>(ipow(p(), static_cast<unsigned>(e)));
        r[b] = a[b] % m;
      }
    }
    return r;
  }

  std::string to_string(const Elem& a) const {
    std::string s;
    for (std::size_t b = 0; b < T_; ++b) {
      if (a[b] == 0) continue;
      if (!s.empty()) s += " + ";
      s += std::to_string(a[b]) + "*t^" + std::to_string(b);
    }
    return s.empty() ? "0" : s;
  }

  Elem random(std::mt19937_64& rng) const {
    Elem r(T_);
    for (auto& c : r) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ring_.modulus()));
    return r;
  }

  /// Number of monomials p^a t^b (a < k, b < T) of value v, the F_p-dimension
  /// of the graded piece.
  std::size_t gr_dim(ExtInt v) const {
    if (v.is_infinite() || !v.is_integer() || v.halves() < 0) return 0;
    std::int64_t n = v.halves() / 2;
    std::size_t count = 0;
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(k()); ++a)
      if (n - a >= 0 && n - a < static_cast<std::int64_t>(T_)) ++count;
    return count;
  }

  /// p^a t^b with their values; an F_p-basis of gr.
  std::vector<std::pair<Elem, ExtInt>> graded_basis() const {
    std::vector<std::pair<Elem, ExtInt>> out;
    for (std::size_t b = 0; b < T_; ++b)
      for (unsigned a = 0; a < k(); ++a)
        out.push_back({monomial(b, static_cast<std::int64_t>(ipow(p(), a))), ExtInt::from_int(static_cast<std::int64_t>(a + b))});
    return out;
  }

  /// min over t^b of w(d(t^b)) - b for a Z-linear map given on monomials.
  ExtInt degree_on_monomials(const std::vector<Elem>& images) const {
    ExtInt best = ExtInt::infinity();
    for (std::size_t b = 0; b < T_; ++b) {
      auto v = value(images[b]);
      if (!v.is_infinite()) best = std::min(best, v - ExtInt::from_int(static_cast<std::int64_t>(b)));
    }
    return best;
  }
  ExtInt sigma_shift_degree() const {
    std::vector<Elem> im;
    for (std::size_t b = 0; b < T_; ++b) im.push_back(sub(sigma_mon_[b], monomial(b)));
    return degree_on_monomials(im);
  }
  ExtInt delta_degree() const { return degree_on_monomials(delta_mon_); }

  bool is_compatible() const {
    return sigma_shift_degree() > ExtInt::from_int(0) && delta_degree() > ExtInt::from_int(0);
  }

  bool is_sigma_minus_id() const {
    for (std::size_t b = 0; b < T_; ++b)
      if (delta_mon_[b] != sub(sigma_mon_[b], monomial(b))) return false;
    return true;
  }

  std::int64_t residue_characteristic() const { return p(); }
  bool is_field_of_char_p() const { return k() == 1; }

  /// sigma^n(t).
  Elem sigma_power_of_t(std::uint64_t n) const {
    Elem e = monomial(1);
    for (std::uint64_t i = 0; i < n; ++i) e = sigma(e);
    return e;
  }

  /// The algebra F_p[t]/(t^T) with the same pair, for k = 1.
  SkewDerivation<PrimeField> to_algebra() const {
    if (k() != 1) throw MathError("series base: to_algebra requires k = 1");
    PrimeField f(p());
    auto A = truncated_poly(f, T_, "t");
    std::vector<Vec<PrimeField>> sc, dc;
    for (std::size_t b = 0; b < T_; ++b) {
      sc.push_back(sigma_mon_[b]);
      dc.push_back(delta_mon_[b]);
    }
    return {A, Matrix<PrimeField>::from_columns(f, T_, sc), Matrix<PrimeField>::from_columns(f, T_, dc), std::nullopt};
  }

  bool operator==(const SeriesBase& o) const {
    return ring_.modulus() == o.ring_.modulus() && T_ == o.T_ && sigma_t_ == o.sigma_t_ && delta_t_ == o.delta_t_;
  }

private:
  Elem linear(const std::vector<Elem>& images, const Elem& a) const {
    Elem r = zero();
    for (std::size_t b = 0; b < T_; ++b) {
      if (a[b] == 0) continue;
      for (std::size_t i = 0; i < T_; ++i) r[i] = ring_.add(r[i], ring_.mul(a[b], images[b][i]));
    }
    return r;
  }

  ModRing ring_;
  std::size_t T_ = 2;
  Elem sigma_t_, delta_t_;
  std::vector<Elem> sigma_mon_, delta_mon_;
};

/// Series base lemma check: deg(sigma^{p^n} - id) >= n with delta = sigma - id.
inline bool lemma16_check(const SeriesBase& R, unsigned n) {
  if (R.value(R.scale_int(R.p(), R.one())) < ExtInt::from_int(1)) throw MathError("lemma16_check: w(p) < 1");
  if (!R.is_sigma_minus_id()) throw MathError("lemma16_check: delta must equal sigma - id");
  if (R.sigma_shift_degree() < ExtInt::from_int(1)) throw MathError("lemma16_check: deg(sigma - id) < 1");
  const std::uint64_t q = static_cast<std::uint64_t>(ipow(R.p(), n));
  std::vector<SeriesBase::Elem> im;
  for (std::size_t b = 0; b < R.T(); ++b) {
    auto e = R.monomial(b);
    auto s = e;
    for (std::uint64_t i = 0; i < q; ++i) s = R.sigma(s);
    im.push_back(R.sub(s, e));
  }
  return R.degree_on_monomials(im) >= ExtInt::from_int(n);
}

// ---------------------------------------------------------------------------
// Finite-dimensional algebra with a filtration
// ---------------------------------------------------------------------------

template <Field F>
class AlgebraBase {
public:
  using Elem = Vec<F>;

  AlgebraBase(SkewDerivation<F> sd, Filtration<F> w) : sd_(std::move(sd)), w_(std::move(w)) {
    if (sd_.algebra.dim() != w_.algebra().dim()) throw MathError("algebra base: filtration and skew derivation disagree");
  }

  const SkewDerivation<F>& skew() const { return sd_; }
  const Filtration<F>& filtration() const { return w_; }
  const FinAlgebra<F>& algebra() const { return sd_.algebra; }

  Elem zero() const { return algebra().zero(); }
  Elem one() const { return algebra().one(); }
  Elem add(const Elem& a, const Elem& b) const { return algebra().add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return algebra().sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return algebra().mul(a, b); }
  Elem scale_int(const BigInt& n, const Elem& a) const { return algebra().scale(algebra().field().from_big(n), a); }
  bool is_zero(const Elem& a) const { return is_zero_vec(algebra().field(), a); }
  Elem sigma(const Elem& a) const { return sd_.apply_sigma(a); }
  Elem delta(const Elem& a) const { return sd_.apply_delta(a); }
  ExtInt value(const Elem& a) const { return w_.value(a); }

  /// Canonical representative modulo F_mu.
  Elem truncate(const Elem& a, ExtInt mu) const {
    if (mu.is_infinite()) return a;
    std::int64_t h = mu.halves();
    if (h <= 0) return zero();
    // Level k has value k / scale; the first level of value >= mu.
    std::int64_t k = (h * w_.scale() + 1) / 2;
    return w_.level(static_cast<std::size_t>(k)).reduce(a);
  }

  std::string to_string(const Elem& a) const {
    const auto& A = algebra();
    const F& f = A.field();
    std::string s;
    for (std::size_t i = 0; i < A.dim(); ++i) {
      if (f.is_zero(a[i])) continue;
      if (!s.empty()) s += " + ";
      s += f.to_string(a[i]) + "*" + A.names()[i];
    }
    return s.empty() ? "0" : s;
  }

  Elem random(std::mt19937_64& rng) const {
    Elem v;
    for (std::size_t i = 0; i < algebra().dim(); ++i)
      v.push_back(algebra().field().from_int(static_cast<std::int64_t>(rng() % 7) - 3));
    return v;
  }

  std::size_t gr_dim(ExtInt v) const {
    if (v.is_infinite() || v.halves() < 0) return 0;
    std::int64_t num = v.halves() * w_.scale();
    if (num % 2 != 0) return 0;
    auto k = static_cast<std::size_t>(num / 2);
    return k < w_.length() ? w_.adapted()[k].size() : 0;
  }

  std::vector<std::pair<Elem, ExtInt>> graded_basis() const {
    std::vector<std::pair<Elem, ExtInt>> out;
    for (std::size_t k = 0; k < w_.length(); ++k)
      for (const auto& v : w_.adapted()[k]) out.push_back({v, w_.to_value(k)});
    return out;
  }

  bool is_compatible() const { return skewps::is_compatible(w_, sd_); }
  bool is_sigma_minus_id() const { return sd_.is_sigma_minus_id(); }
  std::int64_t residue_characteristic() const { return algebra().field().characteristic(); }
  bool is_field_of_char_p() const { return algebra().field().characteristic() != 0; }

private:
  SkewDerivation<F> sd_;
  Filtration<F> w_;
};

static_assert(BaseRing<SeriesBase>);
static_assert(BaseRing<AlgebraBase<PrimeField>>);
static_assert(BaseRing<AlgebraBase<RationalField>>);

} // namespace skewps
