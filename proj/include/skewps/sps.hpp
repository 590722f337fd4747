#pragma once

// Truncated skew power series rings R[[x; sigma, delta]] over a filtered base.
// An element stores r_0, ..., r_{D-1} with r_i reduced modulo F_{(D-i)/2} of
// the base: this is the exact quotient ring S / F_{D/2} S for the filtration
// f_u(sum r_i x^i) = min u(r_i) + i/2, so every ring law holds exactly.

#include "skewps/coeff.hpp"
#include "skewps/series.hpp"

#include <atomic>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace skewps {

namespace detail {
inline std::uint64_t next_ring_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}
} // namespace detail

template <BaseRing Base>
struct SPSElement {
  std::uint64_t parent = 0;
  std::vector<typename Base::Elem> coeffs;
  bool operator==(const SPSElement&) const = default;
};

template <BaseRing Base>
class SPSRing {
public:
  using BaseElem = typename Base::Elem;
  using Elem = SPSElement<Base>;

  SPSRing(Base base, std::size_t D) : base_(std::move(base)), D_(D), id_(detail::next_ring_id()) {
    if (D_ < 1) throw MathError("sps: D must be at least 1");
    if (!base_.is_compatible()) throw MathError("sps: skew derivation is not compatible with the base filtration");
  }

  const Base& base() const { return base_; }
  std::size_t D() const { return D_; }
  std::uint64_t id() const { return id_; }
  /// Truncation level D/2.
  ExtInt lambda() const { return ExtInt::from_halves(static_cast<std::int64_t>(D_)); }
  /// Coefficient of x^i is kept modulo F_{(D-i)/2}.
  ExtInt coeff_cap(std::size_t i) const { return ExtInt::from_halves(static_cast<std::int64_t>(D_ - i)); }

  Elem make(std::vector<BaseElem> coeffs) const {
    coeffs.resize(D_, base_.zero());
    for (std::size_t i = 0; i < D_; ++i) coeffs[i] = base_.truncate(coeffs[i], coeff_cap(i));
    return {id_, std::move(coeffs)};
  }
  Elem zero() const { return make({}); }
  Elem one() const { return constant(base_.one()); }
  Elem constant(const BaseElem& r) const { return monomial(r, 0); }
  Elem monomial(const BaseElem& r, std::size_t i) const {
    std::vector<BaseElem> c(D_, base_.zero());
    if (i < D_) c[i] = r;
    return make(std::move(c));
  }
  Elem x() const { return monomial(base_.one(), 1); }

  void check(const Elem& f) const {
    if (f.parent != id_) throw MathError("sps: parent mismatch");
  }

  Elem add(const Elem& f, const Elem& g) const {
    check(f);
    check(g);
    std::vector<BaseElem> c;
    for (std::size_t i = 0; i < D_; ++i) c.push_back(base_.add(f.coeffs[i], g.coeffs[i]));
    return make(std::move(c));
  }
  Elem sub(const Elem& f, const Elem& g) const {
    check(f);
    check(g);
    std::vector<BaseElem> c;
    for (std::size_t i = 0; i < D_; ++i) c.push_back(base_.sub(f.coeffs[i], g.coeffs[i]));
    return make(std::move(c));
  }
  /// r * f for r in the base.
  Elem left_scale(const BaseElem& r, const Elem& f) const {
    check(f);
    std::vector<BaseElem> c;
    for (std::size_t i = 0; i < D_; ++i) c.push_back(base_.mul(r, f.coeffs[i]));
    return make(std::move(c));
  }
  Elem scale_int(const BigInt& n, const Elem& f) const {
    check(f);
    std::vector<BaseElem> c;
    for (std::size_t i = 0; i < D_; ++i) c.push_back(base_.scale_int(n, f.coeffs[i]));
    return make(std::move(c));
  }

  /// x * (sum s_j x^j) = sum sigma(s_j) x^{j+1} + delta(s_j) x^j.
  Elem x_times(const Elem& h) const {
    check(h);
    std::vector<BaseElem> c(D_, base_.zero());
    for (std::size_t j = 0; j < D_; ++j) {
      c[j] = base_.add(c[j], base_.delta(h.coeffs[j]));
      if (j + 1 < D_) c[j + 1] = base_.add(c[j + 1], base_.sigma(h.coeffs[j]));
    }
    return make(std::move(c));
  }

  Elem mul(const Elem& f, const Elem& g) const {
    check(f);
    check(g);
    Elem acc = zero();
    Elem h = g; // x^i g
    for (std::size_t i = 0; i < D_; ++i) {
      if (!base_.is_zero(f.coeffs[i])) acc = add(acc, left_scale(f.coeffs[i], h));
      if (i + 1 < D_) h = x_times(h);
    }
    return acc;
  }

  Elem pow(Elem f, std::uint64_t e) const {
    Elem r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, f);
      f = mul(f, f);
      e >>= 1;
    }
    return r;
  }

  /// min_i u(r_i) + i/2; infinity means the element is 0 in the truncation.
  ExtInt f_u_value(const Elem& f) const {
    check(f);
    ExtInt best = ExtInt::infinity();
    for (std::size_t i = 0; i < D_; ++i) {
      auto v = base_.value(f.coeffs[i]);
      if (!v.is_infinite()) best = std::min(best, v + ExtInt::from_halves(static_cast<std::int64_t>(i)));
    }
    return best;
  }

  /// Windowed boundedness: every stored coefficient has u(r_i) + i/2 >= threshold.
  bool bounded_in_window(const Elem& f, ExtInt threshold) const { return f_u_value(f) >= threshold; }

  Elem random(std::mt19937_64& rng) const {
    std::vector<BaseElem> c;
    for (std::size_t i = 0; i < D_; ++i) c.push_back(base_.random(rng));
    return make(std::move(c));
  }

  /// Canonical text: terms "<base term>*x^i" in increasing x-degree.
  std::string to_string(const Elem& f) const {
    check(f);
    std::string s;
    for (std::size_t i = 0; i < D_; ++i) {
      if (base_.is_zero(f.coeffs[i])) continue;
      std::string c = base_.to_string(f.coeffs[i]);
      std::size_t pos = 0;
      while (true) {
        auto next = c.find(" + ", pos);
        auto term = c.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (!s.empty()) s += " + ";
        s += term + "*x^" + std::to_string(i);
        if (next == std::string::npos) break;
        pos = next + 3;
      }
    }
    return s.empty() ? "0" : s;
  }

private:
  Base base_;
  std::size_t D_ = 1;
  std::uint64_t id_ = 0;
};

// ---------------------------------------------------------------------------
// Graded isomorphism with gr_u(R)[Z]
// ---------------------------------------------------------------------------

struct GradedIsoReport {
  struct Row {
    ExtInt value;
    std::size_t sps_dim = 0;
    std::size_t expected_dim = 0;
  };
  std::vector<Row> rows;
  bool dims_ok = true;
  bool mult_ok = true;
  std::string witness;
  bool ok() const { return dims_ok && mult_ok; }
};

/// Compares the graded pieces of (S, f_u) at values lo/2, ..., (hi-1)/2 with
/// those of gr_u(R)[Z], and checks on random pairs that the symbol of fg is
/// the commutative product of symbols: f_u(fg - sum r_i s_j x^{i+j}) > f_u(f) + f_u(g).
template <BaseRing Base>
GradedIsoReport graded_iso_check(const SPSRing<Base>& S, std::int64_t lo_halves, std::int64_t hi_halves,
                                 std::size_t samples = 32, std::uint64_t seed = 1) {
  if (lo_halves < 0 || hi_halves > static_cast<std::int64_t>(S.D()) || lo_halves > hi_halves)
    throw MathError("graded_iso_check: window exceeds truncation");
  const auto& R = S.base();
  GradedIsoReport rep;
  auto basis = R.graded_basis();
  for (std::int64_t h = lo_halves; h < hi_halves; ++h) {
    ExtInt v = ExtInt::from_halves(h);
    GradedIsoReport::Row row{v, 0, 0};
    // S side: surviving monomials r x^i whose f_u-value is exactly v.
    for (const auto& [r, val] : basis)
      for (std::size_t i = 0; i < S.D(); ++i)
        if (S.f_u_value(S.monomial(r, i)) == v) ++row.sps_dim;
    // gr_u(R)[Z] side: Z has degree 1/2.
    for (std::int64_t i = 0; i <= h && i < static_cast<std::int64_t>(S.D()); ++i)
      row.expected_dim += R.gr_dim(ExtInt::from_halves(h - i));
    if (row.sps_dim != row.expected_dim) rep.dims_ok = false;
    rep.rows.push_back(row);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples && rep.mult_ok; ++s) {
    auto f = S.random(rng), g = S.random(rng);
    auto fg = S.mul(f, g);
    std::vector<typename Base::Elem> naive(S.D(), R.zero());
    for (std::size_t i = 0; i < S.D(); ++i)
      for (std::size_t j = 0; i + j < S.D(); ++j) naive[i + j] = R.add(naive[i + j], R.mul(f.coeffs[i], g.coeffs[j]));
    auto diff = S.sub(fg, S.make(naive));
    auto bound = S.f_u_value(f) + S.f_u_value(g);
    if (bound.is_infinite()) continue;
    if (!(S.f_u_value(diff) > bound)) {
      rep.mult_ok = false;
      rep.witness = "f = " + S.to_string(f) + " ; g = " + S.to_string(g);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Quotients by (sigma, delta)-ideals of an algebra base
// ---------------------------------------------------------------------------

template <Field F>
struct SPSQuotient {
  SPSRing<AlgebraBase<F>> ring;
  Quotient<F> base_quotient;
  std::uint64_t source_id = 0;

  SPSElement<AlgebraBase<F>> project(const SPSElement<AlgebraBase<F>>& f) const {
    if (f.parent != source_id) throw MathError("sps: parent mismatch");
    std::vector<Vec<F>> c;
    for (const auto& r : f.coeffs) c.push_back(base_quotient.project(r));
    return ring.make(std::move(c));
  }
};

/// S / IS for a (sigma, delta)-stable ideal I of the base.
template <Field F>
SPSQuotient<F> quotient_sps(const SPSRing<AlgebraBase<F>>& S, const Ideal<F>& I) {
  const auto& sd = S.base().skew();
  const F& f = sd.field();
  if (!is_ideal(sd.algebra, I)) throw MathError("quotient_sps: not an ideal");
  if (!I.contains(image(f, sd.sigma, I))) throw MathError("quotient_sps: ideal is not sigma-stable");
  if (!I.contains(image(f, sd.delta, I))) throw MathError("quotient_sps: ideal is not delta-stable");
  auto qf = quotient_filtration(S.base().filtration(), I);
  auto qsd = quotient_skew(sd, qf.quotient);
  SPSRing<AlgebraBase<F>> Sq(AlgebraBase<F>(qsd, qf.filtration), S.D());
  return {std::move(Sq), qf.quotient, S.id()};
}

// ---------------------------------------------------------------------------
// x_(N) = (x+1)^{p^N} - 1 and the crossed-product decomposition
// ---------------------------------------------------------------------------

struct SubringDescriptor {
  unsigned N = 0;
  /// sigma_(N) = sigma^q and delta_(N) = sigma^q - id with q = p^N.
  std::uint64_t q = 1;
  std::string text;
};

template <BaseRing Base>
std::pair<SPSElement<Base>, SubringDescriptor> substitute_xN(const SPSRing<Base>& S, unsigned N) {
  const std::int64_t p = S.base().residue_characteristic();
  if (p == 0) throw MathError("substitute_xN: requires residue characteristic p");
  BigInt q = ipow(p, N);
  if (q > BigInt(S.D())) throw MathError("substitute_xN: p^N exceeds the truncation degree");
  const auto qi = static_cast<std::int64_t>(q);
  std::vector<typename Base::Elem> c(S.D(), S.base().zero());
  for (std::int64_t j = 1; j <= qi && j < static_cast<std::int64_t>(S.D()); ++j)
    c[static_cast<std::size_t>(j)] = S.base().scale_int(binomial(qi, j), S.base().one());
  SubringDescriptor d{N, static_cast<std::uint64_t>(qi),
                      "x_(" + std::to_string(N) + ") = (x+1)^" + std::to_string(qi) + " - 1; sigma_(N) = sigma^" +
                          std::to_string(qi) + "; delta_(N) = sigma^" + std::to_string(qi) + " - id"};
  return {S.make(std::move(c)), d};
}

namespace detail {
template <BaseRing Base>
void require_crossed(const SPSRing<Base>& S, unsigned N) {
  if (!S.base().is_sigma_minus_id()) throw MathError("crossed_decompose requires delta = sigma - id");
  if (!S.base().is_field_of_char_p()) throw MathError("crossed_decompose requires a base of characteristic p");
  if (ipow(S.base().residue_characteristic(), N) > BigInt(S.D()))
    throw MathError("crossed_decompose: p^N exceeds the truncation degree");
}
} // namespace detail

/// Components s_0, ..., s_{q-1} (q = p^N), each supported in x-degrees
/// divisible by q, with sum s_j (x+1)^j = f. In characteristic p, x_(N) = x^q;
/// per block a the relation r_{qa+i} = sum_{j>=i} binom(j,i) c_{a,j} is
/// solved by back-substitution.
template <BaseRing Base>
std::vector<SPSElement<Base>> crossed_decompose(const SPSRing<Base>& S, unsigned N, const SPSElement<Base>& f) {
  detail::require_crossed(S, N);
  S.check(f);
  const auto& R = S.base();
  const auto q = static_cast<std::size_t>(ipow(R.residue_characteristic(), N));
  const std::size_t D = S.D();
  std::vector<std::vector<typename Base::Elem>> comps(q, std::vector<typename Base::Elem>(D, R.zero()));
  for (std::size_t a = 0; a * q < D; ++a) {
    for (std::size_t ii = q; ii-- > 0;) {
      std::size_t n = a * q + ii;
      auto c = n < D ? f.coeffs[n] : R.zero();
      for (std::size_t j = ii + 1; j < q; ++j)
        c = R.sub(c, R.scale_int(binomial(static_cast<std::int64_t>(j), static_cast<std::int64_t>(ii)), comps[j][a * q]));
      comps[ii][a * q] = c;
    }
  }
  std::vector<SPSElement<Base>> out;
  for (auto& c : comps) out.push_back(S.make(std::move(c)));
  return out;
}

template <BaseRing Base>
SPSElement<Base> recompose(const SPSRing<Base>& S, unsigned N, const std::vector<SPSElement<Base>>& comps) {
  detail::require_crossed(S, N);
  const auto q = static_cast<std::size_t>(ipow(S.base().residue_characteristic(), N));
  if (comps.size() != q) throw MathError("recompose: expected p^N components");
  auto xp1 = S.add(S.x(), S.one());
  SPSElement<Base> acc = S.zero();
  SPSElement<Base> power = S.one();
  for (std::size_t j = 0; j < q; ++j) {
    acc = S.add(acc, S.mul(comps[j], power));
    power = S.mul(power, xp1);
  }
  return acc;
}

/// True iff every nonzero coefficient sits in an x-degree divisible by p^N.
template <BaseRing Base>
bool in_xN_subring(const SPSRing<Base>& S, unsigned N, const SPSElement<Base>& f) {
  const auto q = static_cast<std::size_t>(ipow(S.base().residue_characteristic(), N));
  for (std::size_t i = 0; i < S.D(); ++i)
    if (i % q != 0 && !S.base().is_zero(f.coeffs[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Demo rings
// ---------------------------------------------------------------------------

/// F_p[t]/(t^T) with sigma(t) = (1+t)^{1+p} - 1 and delta = sigma - id: a
/// truncated model of the Iwasawa algebra of Z_p semidirect Z_p.
inline SPSRing<SeriesBase> iwasawa_demo(std::int64_t p, std::size_t T, std::size_t D) {
  if (T < 2 || D < 2) throw MathError("iwasawa_demo: T and D must be at least 2");
  ModRing R(p, 1);
  SeriesBase::Elem sigma_t(T, 0);
  for (std::int64_t j = 1; j <= 1 + p && j < static_cast<std::int64_t>(T); ++j)
    sigma_t[static_cast<std::size_t>(j)] = R.from_big(binomial(1 + p, j));
  SeriesBase::Elem delta_t = sigma_t;
  delta_t[1] = R.sub(delta_t[1], 1);
  return SPSRing<SeriesBase>(SeriesBase(R, T, sigma_t, delta_t), D);
}

/// F_p[t]/(t^T) with sigma = id and delta(t) = t^{p+1}.
inline SPSRing<SeriesBase> tpower_demo(std::int64_t p, std::size_t T, std::size_t D) {
  if (T < 2 || D < 2) throw MathError("tpower_demo: T and D must be at least 2");
  ModRing R(p, 1);
  SeriesBase::Elem sigma_t(T, 0), delta_t(T, 0);
  sigma_t[1] = 1;
  if (static_cast<std::size_t>(p + 1) < T) delta_t[static_cast<std::size_t>(p + 1)] = 1;
  return SPSRing<SeriesBase>(SeriesBase(R, T, sigma_t, delta_t), D);
}

} // namespace skewps
