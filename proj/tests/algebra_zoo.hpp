#pragma once

// Small algebras shared by the test suites, plus brute-force helpers that
// enumerate every element of an algebra over a small prime field.

#include "skewps/finalg.hpp"

#include <array>
#include <functional>
#include <vector>

namespace skewps::testing {

/// Group algebra F[G] of a finite group given by its multiplication table.
template <Field F>
FinAlgebra<F> group_algebra(const F& f, const std::vector<std::vector<std::size_t>>& mult, std::size_t identity) {
  const std::size_t n = mult.size();
  std::vector<Vec<F>> table;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table.push_back(unit_vec(f, n, mult[i][j]));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  return FinAlgebra<F>(f, n, table, unit_vec(f, n, identity), names);
}

template <Field F>
FinAlgebra<F> cyclic_group_algebra(const F& f, std::size_t n) {
  std::vector<std::vector<std::size_t>> mult(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mult[i][j] = (i + j) % n;
  return group_algebra(f, mult, 0);
}

template <Field F>
FinAlgebra<F> s3_group_algebra(const F& f) {
  std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::vector<std::size_t>> mult(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
      for (std::size_t t = 0; t < 6; ++t)
        if (perms[t] == c) mult[i][j] = t;
    }
  return group_algebra(f, mult, 0);
}

/// Every element of an algebra over F_p.
inline std::vector<Vec<PrimeField>> all_elements(const FinAlgebra<PrimeField>& A) {
  const std::int64_t p = A.field().prime();
  std::vector<Vec<PrimeField>> out;
  Vec<PrimeField> v(A.dim(), 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == p) v[i++] = 0;
    if (i == v.size()) break;
  }
  return out;
}

inline bool is_nilpotent(const FinAlgebra<PrimeField>& A, const Vec<PrimeField>& x) {
  auto r = x;
  for (std::size_t k = 0; k <= A.dim(); ++k) {
    if (is_zero_vec(A.field(), r)) return true;
    r = A.mul(r, x);
  }
  return is_zero_vec(A.field(), r);
}

/// Jacobson radical by enumeration: x is in it iff y x is nilpotent for all y.
inline std::vector<Vec<PrimeField>> brute_radical(const FinAlgebra<PrimeField>& A) {
  auto elems = all_elements(A);
  std::vector<Vec<PrimeField>> out;
  for (const auto& x : elems) {
    bool in = true;
    for (const auto& y : elems)
      if (!is_nilpotent(A, A.mul(y, x))) {
        in = false;
        break;
      }
    if (in) out.push_back(x);
  }
  return out;
}

/// Automorphism of a monogenic algebra F[X]/(X^n) sending X to `image`.
template <Field F>
LinearMap<F> monogenic_map(const FinAlgebra<F>& A, const Vec<F>& image) {
  std::vector<Vec<F>> cols;
  for (std::size_t k = 0; k < A.dim(); ++k) cols.push_back(A.pow(image, k));
  return Matrix<F>::from_columns(A.field(), A.dim(), cols);
}

/// Path algebra of the two-vertex cycle e1 -a-> e2 -b-> e1 modulo ab = ba = 0.
/// Basis e1, e2, a, b.
template <Field F>
FinAlgebra<F> two_cycle_quiver(const F& f) {
  const std::size_t d = 4;
  std::vector<Vec<F>> table(d * d, zero_vec(f, d));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) { table[i * d + j][k] = f.one(); };
  set(0, 0, 0);
  set(1, 1, 1);
  set(0, 2, 2);
  set(2, 1, 2);
  set(1, 3, 3);
  set(3, 0, 3);
  Vec<F> unit{f.one(), f.one(), f.zero(), f.zero()};
  return FinAlgebra<F>(f, d, table, unit, {"e1", "e2", "a", "b"});
}

/// Automorphism of two_cycle_quiver exchanging e1 with e2 and a with b.
template <Field F>
LinearMap<F> quiver_swap(const F& f) {
  Matrix<F> m(f, 4, 4);
  m(1, 0) = f.one();
  m(0, 1) = f.one();
  m(3, 2) = f.one();
  m(2, 3) = f.one();
  return m;
}

} // namespace skewps::testing
