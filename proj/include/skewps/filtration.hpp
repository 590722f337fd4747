#pragma once

// Descending filtrations F_0 = R > F_1 > ... > F_L = 0 on a finite-dimensional
// algebra, with values k/e for a scale e in {1, 2}. Provides the valuation,
// degrees of linear maps, compatibility with skew derivations, associated
// graded algebras and quotient filtrations.

#include "skewps/coeff.hpp"
#include "skewps/finalg.hpp"
#include "skewps/skewder.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace skewps {

enum class FiltrationKind { Chain, Adic };

template <Field F>
class Filtration {
public:
  using Elem = Vec<F>;

  /// Nested levels starting at the whole algebra and ending at 0. The product
  /// condition is not enforced here; check_axioms reports it.
  static Filtration chain(const FinAlgebra<F>& A, std::vector<Subspace<F>> levels, int scale = 1) {
    Filtration w(A, scale, FiltrationKind::Chain);
    if (levels.empty() || !levels.front().contains(A.one()))
      throw MathError("filtration: F_0 must contain 1");
    for (std::size_t k = 0; k + 1 < levels.size(); ++k)
      if (!levels[k].contains(levels[k + 1])) throw MathError("filtration: levels are not nested at " + std::to_string(k + 1));
    if (!levels.back().is_zero()) levels.push_back(Subspace<F>(A.field(), A.dim()));
    w.levels_ = std::move(levels);
    w.build_adapted();
    return w;
  }

  /// Powers of an ideal; the ideal must be nilpotent for separation.
  static Filtration adic(const FinAlgebra<F>& A, const Ideal<F>& I, int scale = 1) {
    if (!is_ideal(A, I)) throw MathError("filtration: generator is not an ideal");
    Filtration w(A, scale, FiltrationKind::Adic);
    w.levels_.push_back(whole_ideal(A));
    Ideal<F> power = I;
    while (!w.levels_.back().is_zero()) {
      if (power == w.levels_.back()) throw MathError("filtration: adic generator is not nilpotent (not separated)");
      w.levels_.push_back(power);
      power = ideal_product(A, power, I);
    }
    w.generator_ = I;
    w.build_adapted();
    return w;
  }

  const FinAlgebra<F>& algebra() const { return algebra_; }
  int scale() const { return scale_; }
  FiltrationKind kind() const { return kind_; }
  const std::optional<Ideal<F>>& generator() const { return generator_; }
  /// L with F_L = 0.
  std::size_t length() const { return levels_.size() - 1; }
  /// F_k, with F_k = 0 for k >= L.
  const Subspace<F>& level(std::size_t k) const { return k < levels_.size() ? levels_[k] : levels_.back(); }
  const std::vector<Subspace<F>>& levels() const { return levels_; }

  /// Largest k with e in F_k; nothing for e = 0.
  std::optional<std::size_t> level_of(const Elem& e) const {
    if (is_zero_vec(algebra_.field(), e)) return std::nullopt;
    std::size_t k = 0;
    while (k + 1 < levels_.size() && levels_[k + 1].contains(e)) ++k;
    return k;
  }

  ExtInt to_value(std::size_t k) const { return ExtInt::from_halves(static_cast<std::int64_t>(k) * 2 / scale_); }

  ExtInt value(const Elem& e) const {
    auto k = level_of(e);
    return k ? to_value(*k) : ExtInt::infinity();
  }

  /// For each level k < L, vectors completing a basis of F_{k+1} to one of F_k.
  /// Their images in F_k / F_{k+1} form a basis, so the union is an adapted basis.
  const std::vector<std::vector<Elem>>& adapted() const { return adapted_; }

  /// Coordinates of e modulo F_{k+1} in the adapted complement at level k.
  /// Requires e in F_k.
  Elem graded_coords(const Elem& e, std::size_t k) const {
    const auto& comp = adapted()[k];
    std::vector<Elem> cols = comp;
    for (const auto& v : level(k + 1).basis()) cols.push_back(v);
    Elem x;
    if (!solve(algebra_.field(), Matrix<F>::from_columns(algebra_.field(), algebra_.dim(), cols), e, x))
      throw MathError("graded_coords: element not in F_" + std::to_string(k));
    x.resize(comp.size());
    return x;
  }

private:
  Filtration(const FinAlgebra<F>& A, int scale, FiltrationKind kind) : algebra_(A), scale_(scale), kind_(kind) {
    if (scale != 1 && scale != 2) throw MathError("filtration: scale must be 1 or 2");
  }

  FinAlgebra<F> algebra_;
  int scale_ = 1;
  FiltrationKind kind_ = FiltrationKind::Chain;
  std::optional<Ideal<F>> generator_;
  void build_adapted() {
    adapted_.assign(length(), {});
    for (std::size_t k = 0; k < length(); ++k) {
      auto span = levels_[k + 1];
      for (const auto& v : levels_[k].basis()) {
        if (span.contains(v)) continue;
        adapted_[k].push_back(v);
        auto gens = span.basis();
        gens.push_back(v);
        span = Subspace<F>::span(algebra_.field(), algebra_.dim(), std::move(gens));
      }
    }
  }

  std::vector<Subspace<F>> levels_;
  std::vector<std::vector<Elem>> adapted_;
};

/// Exhaustive product check on level bases plus `samples` random pairs for
/// the ultrametric and product inequalities.
template <Field F>
CheckReport check_axioms(const Filtration<F>& w, std::size_t samples = 64, std::uint64_t seed = 1) {
  const auto& A = w.algebra();
  const F& f = A.field();
  CheckReport rep;
  const std::size_t L = w.length();
  for (std::size_t k = 0; k < L; ++k)
    for (std::size_t l = 0; l < L; ++l) {
      const auto& Fk = w.level(k).basis();
      const auto& Fl = w.level(l).basis();
      auto target = w.level(k + l);
      bool bad = false;
      for (std::size_t i = 0; i < Fk.size() && !bad; ++i)
        for (std::size_t j = 0; j < Fl.size() && !bad; ++j)
          if (!target.contains(A.mul(Fk[i], Fl[j]))) {
            rep.violations.push_back({"product", "F_" + std::to_string(k) + "*F_" + std::to_string(l) + " not in F_" +
                                                     std::to_string(k + l) + ": " + A.to_string(Fk[i]) + " * " +
                                                     A.to_string(Fl[j])});
            bad = true;
          }
    }
  std::mt19937_64 rng(seed);
  auto random_elem = [&] {
    Vec<F> v;
    for (std::size_t i = 0; i < A.dim(); ++i) v.push_back(f.from_int(static_cast<std::int64_t>(rng() % 5) - 2));
    // Bias toward deep levels so the sampled inequalities are not vacuous.
    auto k = static_cast<std::size_t>(rng() % (L + 1));
    return vsub(f, v, w.level(k).reduce(v));
  };
  bool ultra = false, prod = false;
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = random_elem(), y = random_elem();
    if (!ultra && w.value(A.add(x, y)) < std::min(w.value(x), w.value(y))) {
      rep.violations.push_back({"ultrametric", A.to_string(x) + " , " + A.to_string(y)});
      ultra = true;
    }
    if (!prod && w.value(A.mul(x, y)) < w.value(x) + w.value(y)) {
      rep.violations.push_back({"product", A.to_string(x) + " * " + A.to_string(y)});
      prod = true;
    }
  }
  return rep;
}

/// min over the adapted basis of w(d b) - w(b); infinity when d = 0.
template <Field F>
ExtInt endo_degree(const Filtration<F>& w, const LinearMap<F>& d) {
  const F& f = w.algebra().field();
  ExtInt best = ExtInt::infinity();
  const auto& comps = w.adapted();
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (const auto& b : comps[k]) {
      auto v = w.value(apply(f, d, b));
      if (v.is_infinite()) continue;
      best = std::min(best, v - w.to_value(k));
    }
  return best;
}

template <Field F>
bool is_compatible(const Filtration<F>& w, const SkewDerivation<F>& sd) {
  const F& f = sd.field();
  auto shift = matsub(f, sd.sigma, Matrix<F>::identity(f, sd.algebra.dim()));
  return endo_degree(w, shift) > ExtInt::from_int(0) && endo_degree(w, sd.delta) > ExtInt::from_int(0);
}

/// deg(sigma^{p^n} - id) >= n for a pair with delta = sigma - id.
template <Field F>
bool lemma16_check(const Filtration<F>& w, const SkewDerivation<F>& sd, unsigned n) {
  const F& f = sd.field();
  const std::int64_t p = f.characteristic();
  if (p == 0) throw MathError("lemma16_check: requires a p-adic or characteristic p base");
  if (!sd.is_sigma_minus_id()) throw MathError("lemma16_check: delta must equal sigma - id");
  if (w.value(sd.algebra.scale(f.from_int(p), sd.algebra.one())) < ExtInt::from_int(1))
    throw MathError("lemma16_check: w(p) < 1");
  if (endo_degree(w, sd.delta) < ExtInt::from_int(1)) throw MathError("lemma16_check: deg(sigma - id) < 1");
  auto shifted = pth_power(sd, n);
  return endo_degree(w, shifted.delta) >= ExtInt::from_int(n);
}

struct Symbol {
  ExtInt value;
  std::size_t level = 0;
  /// Coordinates in the adapted basis of F_level / F_{level+1}; empty for 0.
  std::vector<std::string> repr;
};

template <Field F>
struct GradedAlgebra {
  std::size_t lo = 0, hi = 0;
  int scale = 1;
  /// dims[k - lo] = dim F_k / F_{k+1}.
  std::vector<std::size_t> dims;
  /// (k, i, l, j) -> coordinates of e_{k,i} e_{l,j} in component k + l.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, Vec<F>> products;
  /// The full graded algebra as a finite-dimensional algebra; present when the
  /// window is [0, L).
  std::optional<FinAlgebra<F>> realization;

  std::size_t dim(std::size_t k) const { return (k >= lo && k < hi) ? dims[k - lo] : 0; }
};

/// gr over levels [lo, hi). Products landing outside the window are dropped.
template <Field F>
GradedAlgebra<F> assoc_graded(const Filtration<F>& w, std::size_t lo, std::size_t hi) {
  if (hi > w.length() || lo > hi) throw MathError("assoc_graded: window exceeds truncation");
  const auto& A = w.algebra();
  const F& f = A.field();
  const auto& comps = w.adapted();
  GradedAlgebra<F> gr;
  gr.lo = lo;
  gr.hi = hi;
  gr.scale = w.scale();
  for (std::size_t k = lo; k < hi; ++k) gr.dims.push_back(comps[k].size());
  for (std::size_t k = lo; k < hi; ++k)
    for (std::size_t l = lo; l < hi; ++l) {
      if (k + l >= hi) continue;
      for (std::size_t i = 0; i < comps[k].size(); ++i)
        for (std::size_t j = 0; j < comps[l].size(); ++j) {
          auto prod = A.mul(comps[k][i], comps[l][j]);
          if (!w.level(k + l).contains(prod)) throw MathError("assoc_graded: filtration is not multiplicative");
          gr.products[{k, i, l, j}] = w.graded_coords(prod, k + l);
        }
    }
  if (lo == 0 && hi == w.length()) {
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (auto d : gr.dims) {
      offset.push_back(total);
      total += d;
    }
    std::vector<Vec<F>> table;
    std::vector<std::pair<std::size_t, std::size_t>> index;
    for (std::size_t k = 0; k < hi; ++k)
      for (std::size_t i = 0; i < gr.dims[k]; ++i) index.push_back({k, i});
    for (auto [k, i] : index)
      for (auto [l, j] : index) {
        Vec<F> v = zero_vec(f, total);
        auto it = gr.products.find({k, i, l, j});
        if (it != gr.products.end())
          for (std::size_t t = 0; t < it->second.size(); ++t) v[offset[k + l] + t] = it->second[t];
        table.push_back(std::move(v));
      }
    Vec<F> unit = zero_vec(f, total);
    auto c = w.graded_coords(A.one(), 0);
    for (std::size_t t = 0; t < c.size(); ++t) unit[t] = c[t];
    std::vector<std::string> names;
    for (auto [k, i] : index) names.push_back("g" + std::to_string(k) + "_" + std::to_string(i));
    gr.realization.emplace(f, total, table, unit, names);
  }
  return gr;
}

template <Field F>
Symbol principal_symbol(const Filtration<F>& w, const Vec<F>& e) {
  auto k = w.level_of(e);
  if (!k) return {ExtInt::infinity(), 0, {}};
  Symbol s{w.to_value(*k), *k, {}};
  for (const auto& c : w.graded_coords(e, *k)) s.repr.push_back(w.algebra().field().to_string(c));
  return s;
}

/// Coordinates of the principal symbol of e inside the full realization of gr.
template <Field F>
Vec<F> symbol_in_realization(const Filtration<F>& w, const GradedAlgebra<F>& gr, const Vec<F>& e) {
  if (!gr.realization) throw MathError("symbol_in_realization: graded algebra has no full realization");
  Vec<F> out = zero_vec(w.algebra().field(), gr.realization->dim());
  auto k = w.level_of(e);
  if (!k) return out;
  std::size_t off = 0;
  for (std::size_t t = 0; t < *k; ++t) off += gr.dims[t];
  auto c = w.graded_coords(e, *k);
  for (std::size_t t = 0; t < c.size(); ++t) out[off + t] = c[t];
  return out;
}

template <Field F>
struct QuotientFiltration {
  Quotient<F> quotient;
  Filtration<F> filtration;
};

/// Levels pi(F_k + I) on A / I, realising the sup over coset representatives.
template <Field F>
QuotientFiltration<F> quotient_filtration(const Filtration<F>& w, const Ideal<F>& I) {
  auto q = quotient(w.algebra(), I);
  std::vector<Subspace<F>> levels;
  for (std::size_t k = 0; k <= w.length(); ++k) levels.push_back(q.project_subspace(w.level(k) + I));
  while (levels.size() > 1 && levels[levels.size() - 2].is_zero()) levels.pop_back();
  return {q, Filtration<F>::chain(q.algebra, std::move(levels), w.scale())};
}

} // namespace skewps
