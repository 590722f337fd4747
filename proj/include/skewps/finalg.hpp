#pragma once

// Finite-dimensional associative unital algebras over F_p or Q given by
// structure constants, with two-sided ideals as canonical subspaces.
//
// Elements are plain coordinate vectors (Vec<F>) interpreted against an
// algebra handle; linear maps (automorphisms, skew derivations) are square
// matrices acting on those coordinates.

#include "skewps/linalg.hpp"
#include "skewps/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace skewps {

template <Field F>
using Ideal = Subspace<F>;

template <Field F>
using LinearMap = Matrix<F>;

template <Field F>
class FinAlgebra {
public:
  using value_type = typename F::value_type;
  using Elem = Vec<F>;

  FinAlgebra() = default;

  /// `table[i * dim + j]` holds the coordinates of e_i e_j. Associativity and
  /// the unit are validated on all basis triples.
  FinAlgebra(F f, std::size_t dim, std::vector<Elem> table, Elem unit, std::vector<std::string> names = {})
      : field_(std::move(f)), dim_(dim), table_(std::move(table)), unit_(std::move(unit)), names_(std::move(names)) {
    if (table_.size() != dim_ * dim_) throw MathError("structure table has wrong size");
    for (const auto& v : table_)
      if (v.size() != dim_) throw MathError("structure constant vector has wrong length");
    if (unit_.size() != dim_) throw MathError("unit has wrong length");
    if (names_.empty())
      for (std::size_t i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i));
    if (names_.size() != dim_) throw MathError("basis names have wrong length");
    validate();
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Elem>& table() const { return table_; }

  Elem zero() const { return zero_vec(field_, dim_); }
  Elem one() const { return unit_; }
  Elem basis(std::size_t i) const { return unit_vec(field_, dim_, i); }
  const Elem& product_of_basis(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

  Elem add(const Elem& a, const Elem& b) const { return vadd(field_, a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return vsub(field_, a, b); }
  Elem scale(const value_type& c, const Elem& a) const { return vscale(field_, c, a); }

  Elem mul(const Elem& a, const Elem& b) const {
    check(a);
    check(b);
    Elem out = zero();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (field_.is_zero(b[j])) continue;
        vaxpy(field_, out, field_.mul(a[i], b[j]), table_[i * dim_ + j]);
      }
    }
    return out;
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  bool is_central(const Elem& a) const {
    for (std::size_t i = 0; i < dim_; ++i)
      if (mul(a, basis(i)) != mul(basis(i), a)) return false;
    return true;
  }

  /// Matrix of x -> a x.
  Matrix<F> left_mult(const Elem& a) const {
    std::vector<Elem> cols;
    for (std::size_t j = 0; j < dim_; ++j) cols.push_back(mul(a, basis(j)));
    return Matrix<F>::from_columns(field_, dim_, cols);
  }

  /// Matrix of x -> x a.
  Matrix<F> right_mult(const Elem& a) const {
    std::vector<Elem> cols;
    for (std::size_t j = 0; j < dim_; ++j) cols.push_back(mul(basis(j), a));
    return Matrix<F>::from_columns(field_, dim_, cols);
  }

  std::string to_string(const Elem& a) const {
    std::string s;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(a[i])) continue;
      if (!s.empty()) s += " + ";
      s += field_.to_string(a[i]) + "*" + names_[i];
    }
    return s.empty() ? "0" : s;
  }

  void check(const Elem& a) const {
    if (a.size() != dim_) throw MathError("element does not belong to this algebra (parent mismatch)");
  }

private:
  void validate() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (mul(unit_, basis(i)) != basis(i) || mul(basis(i), unit_) != basis(i))
        throw MathError("unit is not a two-sided identity on " + names_[i]);
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          if (mul(mul(basis(i), basis(j)), basis(k)) != mul(basis(i), mul(basis(j), basis(k))))
            throw MathError("structure constants are not associative on (" + names_[i] + "," + names_[j] + "," +
                            names_[k] + ")");
        }
    }
  }

  F field_{};
  std::size_t dim_ = 0;
  std::vector<Elem> table_;
  Elem unit_;
  std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Standard constructions
// ---------------------------------------------------------------------------

/// F[X]/(X^n) with basis 1, X, ..., X^{n-1}.
template <Field F>
FinAlgebra<F> truncated_poly(const F& f, std::size_t n, const std::string& var = "X") {
  std::vector<Vec<F>> table;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table.push_back(i + j < n ? unit_vec(f, n, i + j) : zero_vec(f, n));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(i == 0 ? "1" : (i == 1 ? var : var + "^" + std::to_string(i)));
  return FinAlgebra<F>(f, n, table, unit_vec(f, n, 0), names);
}

/// F^n with componentwise product.
template <Field F>
FinAlgebra<F> product_of_fields(const F& f, std::size_t n) {
  std::vector<Vec<F>> table;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table.push_back(i == j ? unit_vec(f, n, i) : zero_vec(f, n));
  Vec<F> unit(n, f.one());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
  return FinAlgebra<F>(f, n, table, unit, names);
}

/// The full matrix algebra M_n(F) on matrix units E_rc (index r*n + c).
template <Field F>
FinAlgebra<F> matrix_algebra(const F& f, std::size_t n) {
  const std::size_t d = n * n;
  std::vector<Vec<F>> table;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      // E_{ij} E_{kl} = [j == k] E_{il}
      std::size_t i = a / n, j = a % n, k = b / n, l = b % n;
      table.push_back(j == k ? unit_vec(f, d, i * n + l) : zero_vec(f, d));
    }
  Vec<F> unit = zero_vec(f, d);
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = f.one();
  std::vector<std::string> names;
  for (std::size_t a = 0; a < d; ++a) names.push_back("E" + std::to_string(a / n + 1) + std::to_string(a % n + 1));
  return FinAlgebra<F>(f, d, table, unit, names);
}

/// Upper-triangular n x n matrices.
template <Field F>
FinAlgebra<F> upper_triangular(const F& f, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) units.push_back({i, j});
  const std::size_t d = units.size();
  auto index = [&](std::size_t i, std::size_t j) {
    for (std::size_t t = 0; t < d; ++t)
      if (units[t] == std::make_pair(i, j)) return t;
    throw MathError("not upper triangular");
  };
  std::vector<Vec<F>> table;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      auto [i, j] = units[a];
      auto [k, l] = units[b];
      table.push_back(j == k ? unit_vec(f, d, index(i, l)) : zero_vec(f, d));
    }
  Vec<F> unit = zero_vec(f, d);
  for (std::size_t i = 0; i < n; ++i) unit[index(i, i)] = f.one();
  std::vector<std::string> names;
  for (auto [i, j] : units) names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  return FinAlgebra<F>(f, d, table, unit, names);
}

/// A x B with componentwise product; basis of A first.
template <Field F>
FinAlgebra<F> direct_product(const FinAlgebra<F>& a, const FinAlgebra<F>& b) {
  const F& f = a.field();
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  std::vector<Vec<F>> table;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec<F> v = zero_vec(f, d);
      if (i < da && j < da) {
        const auto& p = a.product_of_basis(i, j);
        std::copy(p.begin(), p.end(), v.begin());
      } else if (i >= da && j >= da) {
        const auto& p = b.product_of_basis(i - da, j - da);
        std::copy(p.begin(), p.end(), v.begin() + static_cast<std::ptrdiff_t>(da));
      }
      table.push_back(std::move(v));
    }
  Vec<F> unit = a.one();
  auto ub = b.one();
  unit.insert(unit.end(), ub.begin(), ub.end());
  std::vector<std::string> names;
  for (const auto& n : a.names()) names.push_back(n + "'0");
  for (const auto& n : b.names()) names.push_back(n + "'1");
  return FinAlgebra<F>(f, d, table, unit, names);
}

/// A (x) B; basis element a_i (x) b_j has index i * dim(B) + j.
template <Field F>
FinAlgebra<F> tensor_product(const FinAlgebra<F>& a, const FinAlgebra<F>& b) {
  const F& f = a.field();
  const std::size_t da = a.dim(), db = b.dim(), d = da * db;
  std::vector<Vec<F>> table;
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t) {
      const auto& pa = a.product_of_basis(s / db, t / db);
      const auto& pb = b.product_of_basis(s % db, t % db);
      Vec<F> v = zero_vec(f, d);
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) v[i * db + j] = f.mul(pa[i], pb[j]);
      table.push_back(std::move(v));
    }
  auto ua = a.one(), ub = b.one();
  Vec<F> unit = zero_vec(f, d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) unit[i * db + j] = f.mul(ua[i], ub[j]);
  std::vector<std::string> names;
  for (const auto& na : a.names())
    for (const auto& nb : b.names()) names.push_back(na == "1" ? nb : (nb == "1" ? na : na + nb));
  return FinAlgebra<F>(f, d, table, unit, names);
}

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

template <Field F>
bool is_ideal(const FinAlgebra<F>& A, const Subspace<F>& s) {
  for (const auto& v : s.basis())
    for (std::size_t i = 0; i < A.dim(); ++i)
      if (!s.contains(A.mul(A.basis(i), v)) || !s.contains(A.mul(v, A.basis(i)))) return false;
  return true;
}

/// Smallest two-sided ideal containing `gens`, by closing the span under
/// multiplication by basis elements until the dimension stabilises.
template <Field F>
Ideal<F> ideal_generated(const FinAlgebra<F>& A, const std::vector<Vec<F>>& gens) {
  for (const auto& g : gens) A.check(g);
  auto s = Subspace<F>::span(A.field(), A.dim(), gens);
  while (true) {
    std::vector<Vec<F>> more = s.basis();
    for (const auto& v : s.basis())
      for (std::size_t i = 0; i < A.dim(); ++i) {
        more.push_back(A.mul(A.basis(i), v));
        more.push_back(A.mul(v, A.basis(i)));
      }
    auto next = Subspace<F>::span(A.field(), A.dim(), std::move(more));
    if (next.dim() == s.dim()) return next;
    s = std::move(next);
  }
}

template <Field F>
Ideal<F> zero_ideal(const FinAlgebra<F>& A) {
  return Subspace<F>(A.field(), A.dim());
}

template <Field F>
Ideal<F> whole_ideal(const FinAlgebra<F>& A) {
  return Subspace<F>::whole(A.field(), A.dim());
}

/// The product ideal IJ.
template <Field F>
Ideal<F> ideal_product(const FinAlgebra<F>& A, const Ideal<F>& I, const Ideal<F>& J) {
  std::vector<Vec<F>> gens;
  for (const auto& a : I.basis())
    for (const auto& b : J.basis()) gens.push_back(A.mul(a, b));
  return ideal_generated(A, gens);
}

/// Largest two-sided ideal contained in the subspace K: {a : e_i a e_j in K}.
template <Field F>
Ideal<F> largest_ideal_in(const FinAlgebra<F>& A, const Subspace<F>& K) {
  auto whole = whole_ideal(A);
  return kernel_on(A.field(), whole, [&](const Vec<F>& a) {
    Vec<F> out;
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j) {
        auto r = K.reduce(A.mul(A.mul(A.basis(i), a), A.basis(j)));
        out.insert(out.end(), r.begin(), r.end());
      }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// A / I realised on the free (non-pivot) coordinates of I's echelon basis.
template <Field F>
struct Quotient {
  FinAlgebra<F> algebra;
  Ideal<F> ideal;
  std::vector<std::size_t> free;

  Vec<F> project(const Vec<F>& v) const {
    auto r = ideal.reduce(v);
    Vec<F> out;
    for (std::size_t c : free) out.push_back(r[c]);
    return out;
  }

  Vec<F> lift(const Vec<F>& w) const {
    Vec<F> out = zero_vec(ideal.field(), ideal.ambient());
    for (std::size_t k = 0; k < free.size(); ++k) out[free[k]] = w[k];
    return out;
  }

  /// Preimage of a subspace of the quotient.
  Subspace<F> lift_subspace(const Subspace<F>& s) const {
    std::vector<Vec<F>> gens = ideal.basis();
    for (const auto& v : s.basis()) gens.push_back(lift(v));
    return Subspace<F>::span(ideal.field(), ideal.ambient(), std::move(gens));
  }

  Subspace<F> project_subspace(const Subspace<F>& s) const {
    std::vector<Vec<F>> gens;
    for (const auto& v : s.basis()) gens.push_back(project(v));
    return Subspace<F>::span(ideal.field(), free.size(), std::move(gens));
  }

  /// Induced map on A/I of a linear map preserving I.
  Matrix<F> induced(const Matrix<F>& m) const {
    std::vector<Vec<F>> cols;
    for (std::size_t k = 0; k < free.size(); ++k)
      cols.push_back(project(apply(ideal.field(), m, lift(unit_vec(ideal.field(), free.size(), k)))));
    return Matrix<F>::from_columns(ideal.field(), free.size(), cols);
  }
};

template <Field F>
Quotient<F> quotient(const FinAlgebra<F>& A, const Ideal<F>& I) {
  if (!is_ideal(A, I)) throw MathError("quotient by a subspace that is not a two-sided ideal");
  Quotient<F> q{FinAlgebra<F>{}, I, I.free_columns()};
  const std::size_t d = q.free.size();
  std::vector<Vec<F>> table;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      table.push_back(q.project(A.mul(A.basis(q.free[a]), A.basis(q.free[b]))));
  std::vector<std::string> names;
  for (std::size_t c : q.free) names.push_back(A.names()[c]);
  q.algebra = FinAlgebra<F>(A.field(), d, table, q.project(A.one()), names);
  return q;
}

// ---------------------------------------------------------------------------
// Radical
// ---------------------------------------------------------------------------

template <Field F>
typename F::value_type trace(const F& f, const Matrix<F>& m) {
  auto t = f.zero();
  for (std::size_t i = 0; i < m.rows(); ++i) t = f.add(t, m(i, i));
  return t;
}

namespace detail {

// Over F_p: g_i(a) = (Tr(L^{p^i}) mod p^{i+1}) / p^i, with L an integer lift
// of the left-multiplication matrix of a.
inline std::int64_t lifted_trace_functional(const FinAlgebra<PrimeField>& A, const Vec<PrimeField>& a, int i) {
  const std::int64_t p = A.field().prime();
  ModRing ring(p, i + 1);
  auto L = A.left_mult(a);
  Matrix<ModRing> lifted(ring, A.dim(), A.dim());
  for (std::size_t r = 0; r < A.dim(); ++r)
    for (std::size_t c = 0; c < A.dim(); ++c) lifted(r, c) = L(r, c);
  std::uint64_t e = 1;
  for (int t = 0; t < i; ++t) e *= static_cast<std::uint64_t>(p);
  auto P = matpow(ring, lifted, e);
  std::int64_t tr = trace(ring, P);
  std::int64_t pi = ring.modulus() / p;
  if (tr % pi != 0) throw MathError("internal: lifted trace not divisible by p^i");
  return (tr / pi) % p;
}

} // namespace detail

/// Largest nilpotent two-sided ideal.
///
/// Over Q: {x : Tr(L_{x y}) = 0 for all y}. Over F_p: the chain
/// I_{-1} = A, I_i = {a in I_{i-1} : g_i(a y) = 0 for all y}, stopping at
/// i = floor(log_p dim), where g_i is the lifted trace functional above.
template <Field F>
Ideal<F> radical(const FinAlgebra<F>& A) {
  const F& f = A.field();
  if (A.dim() == 0) return zero_ideal(A);
  if constexpr (std::is_same_v<F, RationalField>) {
    return kernel_on(f, whole_ideal(A), [&](const Vec<F>& x) {
      Vec<F> out;
      for (std::size_t j = 0; j < A.dim(); ++j) out.push_back(trace(f, A.left_mult(A.mul(x, A.basis(j)))));
      return out;
    });
  } else {
    const std::int64_t p = f.prime();
    Ideal<F> cur = whole_ideal(A);
    std::uint64_t pi = 1;
    for (int i = 0; pi <= A.dim(); ++i, pi *= static_cast<std::uint64_t>(p)) {
      cur = kernel_on(f, cur, [&](const Vec<F>& a) {
        Vec<F> out;
        for (std::size_t j = 0; j < A.dim(); ++j)
          out.push_back(detail::lifted_trace_functional(A, A.mul(a, A.basis(j)), i));
        return out;
      });
    }
    return cur;
  }
}

/// Smallest n with I^n = 0, or nothing if I is not nilpotent.
template <Field F>
std::optional<std::size_t> nilpotency_index(const FinAlgebra<F>& A, const Ideal<F>& I) {
  Ideal<F> power = whole_ideal(A);
  for (std::size_t n = 0; n <= A.dim() + 1; ++n) {
    if (power.is_zero()) return n;
    power = ideal_product(A, power, I);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Center and central idempotents
// ---------------------------------------------------------------------------

template <Field F>
Subspace<F> center(const FinAlgebra<F>& A) {
  return kernel_on(A.field(), whole_ideal(A), [&](const Vec<F>& z) {
    Vec<F> out;
    for (std::size_t i = 0; i < A.dim(); ++i) {
      auto c = A.sub(A.mul(z, A.basis(i)), A.mul(A.basis(i), z));
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  });
}

namespace detail {

template <Field F>
Vec<F> eval_poly_at(const FinAlgebra<F>& A, const Poly<F>& g, const Vec<F>& z, const Vec<F>& unit) {
  Vec<F> r = A.zero();
  for (auto it = g.rbegin(); it != g.rend(); ++it) r = A.add(A.mul(r, z), A.scale(*it, unit));
  return r;
}

/// Minimal polynomial of z inside the corner e A e with unit e.
template <Field F>
Poly<F> min_poly(const FinAlgebra<F>& A, const Vec<F>& z, const Vec<F>& e) {
  const F& f = A.field();
  std::vector<Vec<F>> powers{e};
  while (true) {
    Vec<F> next = A.mul(powers.back(), z);
    auto m = Matrix<F>::from_columns(f, A.dim(), powers);
    Vec<F> x;
    if (solve(f, m, next, x)) {
      Poly<F> g;
      for (const auto& c : x) g.push_back(f.neg(c));
      g.push_back(f.one());
      return g;
    }
    powers.push_back(std::move(next));
  }
}

// Splits e over F_p: the Frobenius-fixed part of eZ is a product of copies of
// F_p, so every element of it has a split minimal polynomial.
inline std::vector<Vec<PrimeField>> split_fp(const FinAlgebra<PrimeField>& A, const Subspace<PrimeField>& Z) {
  const PrimeField& f = A.field();
  const std::int64_t p = f.prime();
  auto fixed = kernel_on(f, Z, [&](const Vec<PrimeField>& z) { return A.sub(A.pow(z, p), z); });
  std::vector<Vec<PrimeField>> idem{A.one()};
  for (const auto& b : fixed.basis()) {
    std::vector<Vec<PrimeField>> next;
    for (const auto& e : idem) {
      Vec<PrimeField> eb = A.mul(e, b);
      for (std::int64_t c = 0; c < p; ++c) {
        Vec<PrimeField> part = e;
        for (std::int64_t c2 = 0; c2 < p; ++c2) {
          if (c2 == c) continue;
          auto factor = A.sub(eb, A.scale(c2, e));
          part = A.scale(f.inv(f.sub(c, c2)), A.mul(part, factor));
        }
        if (!is_zero_vec(f, part)) next.push_back(part);
      }
    }
    idem = std::move(next);
  }
  return idem;
}

// Splits e over Q via minimal polynomials of elements of eZ and a factor
// search; recursion stops once a generic element has an irreducible minimal
// polynomial of full degree.
inline void split_q(const FinAlgebra<RationalField>& A, const Subspace<RationalField>& Z, const Vec<RationalField>& e,
                    std::vector<Vec<RationalField>>& out) {
  RationalField q;
  std::vector<Vec<RationalField>> corner;
  for (const auto& z : Z.basis()) corner.push_back(A.mul(e, z));
  auto eZ = Subspace<RationalField>::span(q, A.dim(), corner);
  const std::size_t d = eZ.dim();
  if (d <= 1) {
    out.push_back(e);
    return;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec<RationalField> z = A.zero();
    for (std::size_t i = 0; i < d; ++i) {
      // Deterministic small coefficients; attempt 0 uses 1, 2, 3, ...
      long long c = static_cast<long long>((i + 1) * (attempt + 1) + attempt * attempt) % 7 + 1;
      if ((i + attempt) % 3 == 2) c = -c;
      z = A.add(z, A.scale(Rational(c), eZ.basis()[i]));
    }
    auto m = min_poly(A, z, e);
    auto integer = primitive_integer_poly(m);
    auto factor = kronecker_factor(integer);
    if (!factor) {
      if (m.size() - 1 == d) {
        out.push_back(e);
        return;
      }
      continue;
    }
    Poly<RationalField> g;
    for (const auto& c : *factor) g.push_back(Rational(c));
    auto h = poly_divmod(q, m, g).first;
    auto [gcd, u, v] = poly_xgcd(q, g, h);
    if (gcd.size() != 1) continue; // repeated factor: cannot happen for semisimple input
    auto e1 = A.mul(e, eval_poly_at(A, poly_mul(q, v, h), z, e));
    auto e2 = A.sub(e, e1);
    split_q(A, Z, e1, out);
    split_q(A, Z, e2, out);
    return;
  }
  throw MathError("center splitting inconclusive: no generating element found");
}

} // namespace detail

/// Centrally primitive idempotents of a semisimple algebra, sorted by their
/// coordinate vectors.
template <Field F>
std::vector<Vec<F>> central_idempotents(const FinAlgebra<F>& A) {
  if (!radical(A).is_zero()) throw MathError("algebra not semisimple");
  if (A.dim() == 0) return {};
  auto Z = center(A);
  std::vector<Vec<F>> out;
  if constexpr (std::is_same_v<F, RationalField>) {
    detail::split_q(A, Z, A.one(), out);
  } else {
    out = detail::split_fp(A, Z);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Artinian prime <=> simple: zero radical and a single Wedderburn block.
template <Field F>
bool is_prime_fd(const FinAlgebra<F>& A) {
  if (A.dim() == 0) return false;
  if (!radical(A).is_zero()) return false;
  return central_idempotents(A).size() == 1;
}

/// Minimal primes over I: preimages of the maximal ideals of the semisimple
/// quotient (A/I)/rad(A/I). Sorted by the canonical subspace order.
template <Field F>
std::vector<Ideal<F>> minimal_primes_over(const FinAlgebra<F>& A, const Ideal<F>& I) {
  if (I.is_whole()) return {};
  auto q1 = quotient(A, I);
  auto N = radical(q1.algebra);
  auto q2 = quotient(q1.algebra, N);
  const auto& S = q2.algebra;
  std::vector<Ideal<F>> out;
  for (const auto& e : central_idempotents(S)) {
    auto comp = S.sub(S.one(), e);
    std::vector<Vec<F>> gens;
    for (std::size_t i = 0; i < S.dim(); ++i) gens.push_back(S.mul(comp, S.basis(i)));
    auto maximal = Subspace<F>::span(A.field(), S.dim(), gens);
    out.push_back(q1.lift_subspace(q2.lift_subspace(maximal)));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lex_less(b); });
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms, orbits, sigma-primes
// ---------------------------------------------------------------------------

template <Field F>
bool is_automorphism(const FinAlgebra<F>& A, const LinearMap<F>& sigma) {
  const F& f = A.field();
  if (rank(f, sigma) != A.dim()) return false;
  if (apply(f, sigma, A.one()) != A.one()) return false;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (apply(f, sigma, A.mul(A.basis(i), A.basis(j))) !=
          A.mul(apply(f, sigma, A.basis(i)), apply(f, sigma, A.basis(j))))
        return false;
  return true;
}

inline constexpr std::size_t kDefaultOrbitCap = 64;

/// The distinct ideals sigma^n(I), in order of first appearance.
template <Field F>
std::vector<Ideal<F>> sigma_orbit(const FinAlgebra<F>& A, const Ideal<F>& I, const LinearMap<F>& sigma,
                                  std::size_t cap = kDefaultOrbitCap) {
  if (!is_automorphism(A, sigma)) throw MathError("sigma is not an algebra automorphism");
  const F& f = A.field();
  std::vector<Ideal<F>> orbit{I};
  while (true) {
    auto next = image(f, sigma, orbit.back());
    if (next == orbit.front()) return orbit;
    if (std::find(orbit.begin(), orbit.end(), next) != orbit.end())
      throw MathError("internal: sigma orbit is not a cycle");
    orbit.push_back(std::move(next));
    if (orbit.size() > cap) {
      if (f.characteristic() == 0) throw MathError("orbit cap exceeded");
      // Over a finite field the orbit is finite; the cap only guards runaway input.
      if (orbit.size() > 1000000) throw MathError("orbit cap exceeded");
    }
  }
}

template <Field F>
Ideal<F> intersect_all(const FinAlgebra<F>& A, const std::vector<Ideal<F>>& ideals) {
  Ideal<F> acc = whole_ideal(A);
  for (const auto& I : ideals) acc = intersect(acc, I);
  return acc;
}

template <Field F>
bool is_sigma_stable(const FinAlgebra<F>& A, const Ideal<F>& I, const LinearMap<F>& sigma) {
  return I.contains(image(A.field(), sigma, I));
}

/// I is sigma-prime iff it is semiprime and its minimal primes form a single
/// sigma-orbit (whose intersection is then I).
template <Field F>
bool is_sigma_prime(const FinAlgebra<F>& A, const Ideal<F>& I, const LinearMap<F>& sigma,
                    std::size_t cap = kDefaultOrbitCap) {
  if (!is_sigma_stable(A, I, sigma)) throw MathError("ideal is not sigma-stable");
  if (I.is_whole()) return false;
  auto q = quotient(A, I);
  if (!radical(q.algebra).is_zero()) return false;
  auto primes = minimal_primes_over(A, I);
  auto orbit = sigma_orbit(A, primes.front(), sigma, cap);
  if (orbit.size() != primes.size()) return false;
  for (const auto& P : orbit)
    if (std::find(primes.begin(), primes.end(), P) == primes.end()) return false;
  return intersect_all(A, orbit) == I;
}

/// Minimal sigma-prime ideals containing I: intersections of the sigma-orbits
/// of the minimal primes over I.
template <Field F>
std::vector<Ideal<F>> minimal_sigma_primes(const FinAlgebra<F>& A, const LinearMap<F>& sigma, const Ideal<F>& I,
                                           std::size_t cap = kDefaultOrbitCap) {
  if (!is_sigma_stable(A, I, sigma)) throw MathError("ideal is not sigma-stable");
  auto primes = minimal_primes_over(A, I);
  std::vector<Ideal<F>> out;
  std::vector<bool> used(primes.size(), false);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (used[i]) continue;
    auto orbit = sigma_orbit(A, primes[i], sigma, cap);
    for (const auto& P : orbit) {
      auto it = std::find(primes.begin(), primes.end(), P);
      if (it == primes.end()) throw MathError("internal: sigma does not permute the minimal primes");
      used[static_cast<std::size_t>(it - primes.begin())] = true;
    }
    out.push_back(intersect_all(A, orbit));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lex_less(b); });
  return out;
}

} // namespace skewps
