#pragma once

// Dense exact linear algebra over a Field: matrices acting on column
// vectors, reduced row-echelon forms, and subspaces kept in canonical form.

#include "skewps/field.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace skewps {

template <Field F>
using Vec = std::vector<typename F::value_type>;

template <Field F>
Vec<F> zero_vec(const F& f, std::size_t n) {
  return Vec<F>(n, f.zero());
}

template <Field F>
Vec<F> unit_vec(const F& f, std::size_t n, std::size_t i) {
  Vec<F> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <Field F>
bool is_zero_vec(const F& f, const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); });
}

template <Field F>
Vec<F> vadd(const F& f, const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

template <Field F>
Vec<F> vsub(const F& f, const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

template <Field F>
Vec<F> vscale(const F& f, const typename F::value_type& c, const Vec<F>& a) {
  Vec<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
  return r;
}

/// a += c * b
template <Field F>
void vaxpy(const F& f, Vec<F>& a, const typename F::value_type& c, const Vec<F>& b) {
  if (f.is_zero(c)) return;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.add(a[i], f.mul(c, b[i]));
}

/// Row-major dense matrix; acts on column vectors.
template <Field F>
class Matrix {
public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(const F& f, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

  static Matrix identity(const F& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const F& f, std::size_t rows, const std::vector<Vec<F>>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<F> column(std::size_t c) const {
    Vec<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<value_type> data_;
};

template <Field F>
Vec<F> apply(const F& f, const Matrix<F>& m, const Vec<F>& v) {
  Vec<F> out(m.rows(), f.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!f.is_zero(v[c])) out[r] = f.add(out[r], f.mul(m(r, c), v[c]));
  return out;
}

template <Field F>
Matrix<F> matmul(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (f.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(a(i, k), b(k, j)));
    }
  return out;
}

template <Field F>
Matrix<F> matadd(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> out(f, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
  return out;
}

template <Field F>
Matrix<F> matsub(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> out(f, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.sub(a(i, j), b(i, j));
  return out;
}

template <Field F>
Matrix<F> matscale(const F& f, const typename F::value_type& c, const Matrix<F>& a) {
  Matrix<F> out(f, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.mul(c, a(i, j));
  return out;
}

template <Field F>
Matrix<F> matpow(const F& f, Matrix<F> a, std::uint64_t e) {
  Matrix<F> r = Matrix<F>::identity(f, a.rows());
  while (e > 0) {
    if (e & 1) r = matmul(f, r, a);
    e >>= 1;
    if (e > 0) a = matmul(f, a, a);
  }
  return r;
}

template <Field F>
bool is_zero_matrix(const F& f, const Matrix<F>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!f.is_zero(m(i, j))) return false;
  return true;
}

/// In-place reduced row-echelon form of a list of row vectors. Zero rows are
/// dropped; returns the pivot column of each surviving row.
template <Field F>
std::vector<std::size_t> rref_rows(const F& f, std::vector<Vec<F>>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && f.is_zero(rows[sel][c])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    auto inv = f.inv(rows[r][c]);
    rows[r] = vscale(f, inv, rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && !f.is_zero(rows[i][c])) vaxpy(f, rows[i], f.neg(rows[i][c]), rows[r]);
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

template <Field F>
std::size_t rank(const F& f, const Matrix<F>& m) {
  std::vector<Vec<F>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec<F> v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(i, j);
    rows.push_back(std::move(v));
  }
  return rref_rows(f, rows, m.cols()).size();
}

/// A linear subspace of F^n held as its reduced row-echelon basis, so that
/// equal subspaces compare equal member-wise.
template <Field F>
class Subspace {
public:
  using value_type = typename F::value_type;

  Subspace() = default;
  Subspace(const F& f, std::size_t ambient) : field_(f), ambient_(ambient) {}

  static Subspace span(const F& f, std::size_t ambient, std::vector<Vec<F>> gens) {
    Subspace s(f, ambient);
    s.pivots_ = rref_rows(f, gens, ambient);
    s.basis_ = std::move(gens);
    return s;
  }
  static Subspace whole(const F& f, std::size_t ambient) {
    std::vector<Vec<F>> gens;
    for (std::size_t i = 0; i < ambient; ++i) gens.push_back(unit_vec(f, ambient, i));
    return span(f, ambient, std::move(gens));
  }

  const F& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_whole() const { return basis_.size() == ambient_; }
  const std::vector<Vec<F>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Canonical representative of v modulo this subspace: pivot coordinates
  /// are cleared.
  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const auto c = v[pivots_[r]];
      if (!field_.is_zero(c)) vaxpy(field_, v, field_.neg(c), basis_[r]);
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return is_zero_vec(field_, reduce(v)); }

  bool contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec<F>& v) { return contains(v); });
  }

  /// Columns that are not pivots; the matching unit vectors span a complement.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (k < pivots_.size() && pivots_[k] == c) {
        ++k;
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    std::vector<Vec<F>> gens = a.basis_;
    gens.insert(gens.end(), b.basis_.begin(), b.basis_.end());
    return span(a.field_, a.ambient_, std::move(gens));
  }

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

  /// Deterministic total order: by dimension, then by basis entries.
  bool lex_less(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    for (std::size_t r = 0; r < basis_.size(); ++r)
      for (std::size_t c = 0; c < ambient_; ++c) {
        if (basis_[r][c] == o.basis_[r][c]) continue;
        return basis_[r][c] < o.basis_[r][c];
      }
    return false;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (r) s += "; ";
      for (std::size_t c = 0; c < ambient_; ++c) {
        if (c) s += " ";
        s += field_.to_string(basis_[r][c]);
      }
    }
    return s + "]";
  }

private:
  F field_{};
  std::size_t ambient_ = 0;
  std::vector<Vec<F>> basis_;
  std::vector<std::size_t> pivots_;
};

/// Null space of m (vectors v with m v = 0).
template <Field F>
Subspace<F> kernel(const F& f, const Matrix<F>& m) {
  std::vector<Vec<F>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec<F> v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(i, j);
    rows.push_back(std::move(v));
  }
  auto pivots = rref_rows(f, rows, m.cols());
  std::vector<Vec<F>> gens;
  std::size_t k = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (k < pivots.size() && pivots[k] == c) {
      ++k;
      continue;
    }
    Vec<F> v = unit_vec(f, m.cols(), c);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(rows[r][c]);
    gens.push_back(std::move(v));
  }
  return Subspace<F>::span(f, m.cols(), std::move(gens));
}

/// Kernel of a family of linear maps given by their values on a basis of
/// `domain`: returns the subspace of domain vectors sent to zero by all.
/// `image_of(v)` must return a vector (any length) linear in v.
template <Field F, class Fn>
Subspace<F> kernel_on(const F& f, const Subspace<F>& domain, Fn&& image_of) {
  const auto& basis = domain.basis();
  if (basis.empty()) return Subspace<F>(f, domain.ambient());
  std::vector<Vec<F>> images;
  for (const auto& b : basis) images.push_back(image_of(b));
  std::size_t len = images.front().size();
  Matrix<F> m(f, len, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < len; ++r) m(r, c) = images[c][r];
  Subspace<F> coeffs = kernel(f, m);
  std::vector<Vec<F>> gens;
  for (const auto& cv : coeffs.basis()) {
    Vec<F> v = zero_vec(f, domain.ambient());
    for (std::size_t i = 0; i < basis.size(); ++i) vaxpy(f, v, cv[i], basis[i]);
    gens.push_back(std::move(v));
  }
  return Subspace<F>::span(f, domain.ambient(), std::move(gens));
}

template <Field F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  return kernel_on(a.field(), a, [&](const Vec<F>& v) { return b.reduce(v); });
}

template <Field F>
Subspace<F> image(const F& f, const Matrix<F>& m, const Subspace<F>& s) {
  std::vector<Vec<F>> gens;
  for (const auto& v : s.basis()) gens.push_back(apply(f, m, v));
  return Subspace<F>::span(f, m.rows(), std::move(gens));
}

/// {v in domain : m v in target}.
template <Field F>
Subspace<F> preimage(const F& f, const Matrix<F>& m, const Subspace<F>& target, const Subspace<F>& domain) {
  return kernel_on(f, domain, [&](const Vec<F>& v) { return target.reduce(apply(f, m, v)); });
}

template <Field F>
Subspace<F> preimage(const F& f, const Matrix<F>& m, const Subspace<F>& target) {
  return preimage(f, m, target, Subspace<F>::whole(f, m.cols()));
}

/// Solve m x = b; returns false when inconsistent.
template <Field F>
bool solve(const F& f, const Matrix<F>& m, const Vec<F>& b, Vec<F>& x) {
  std::vector<Vec<F>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec<F> v(m.cols() + 1);
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(i, j);
    v[m.cols()] = b[i];
    rows.push_back(std::move(v));
  }
  auto pivots = rref_rows(f, rows, m.cols() + 1);
  x = zero_vec(f, m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) return false;
    x[pivots[r]] = rows[r][m.cols()];
  }
  return true;
}

template <Field F>
bool invert(const F& f, const Matrix<F>& m, Matrix<F>& out) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return false;
  std::vector<Vec<F>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<F> v(2 * n, f.zero());
    for (std::size_t j = 0; j < n; ++j) v[j] = m(i, j);
    v[n + i] = f.one();
    rows.push_back(std::move(v));
  }
  auto pivots = rref_rows(f, rows, 2 * n);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return false;
  out = Matrix<F>(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rows[i][n + j];
  return true;
}

} // namespace skewps
