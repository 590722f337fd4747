#pragma once

// Skew derivations (sigma, delta) on a finite-dimensional algebra, their
// axiom checks, p-power and shift powers, and the binomial and carry-free
// trinomial expansions of delta^n on products.

#include "skewps/coeff.hpp"
#include "skewps/finalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skewps {

template <Field F>
struct SkewDerivation {
  FinAlgebra<F> algebra;
  LinearMap<F> sigma;
  LinearMap<F> delta;
  /// Optional central unit with delta sigma = q sigma delta.
  std::optional<Vec<F>> q;

  using Elem = Vec<F>;

  const F& field() const { return algebra.field(); }
  Elem apply_sigma(const Elem& a) const { return apply(field(), sigma, a); }
  Elem apply_delta(const Elem& a) const { return apply(field(), delta, a); }

  Elem sigma_pow(const Elem& a, std::uint64_t n) const {
    Elem r = a;
    for (std::uint64_t i = 0; i < n; ++i) r = apply_sigma(r);
    return r;
  }
  Elem delta_pow(const Elem& a, std::uint64_t n) const {
    Elem r = a;
    for (std::uint64_t i = 0; i < n; ++i) r = apply_delta(r);
    return r;
  }

  bool commutes() const { return matmul(field(), sigma, delta) == matmul(field(), delta, sigma); }

  bool is_sigma_minus_id() const {
    return delta == matsub(field(), sigma, Matrix<F>::identity(field(), algebra.dim()));
  }
};

/// The identity/zero pair.
template <Field F>
SkewDerivation<F> trivial_skew(const FinAlgebra<F>& A) {
  return {A, Matrix<F>::identity(A.field(), A.dim()), Matrix<F>(A.field(), A.dim(), A.dim()), std::nullopt};
}

/// (sigma, sigma - id).
template <Field F>
SkewDerivation<F> sigma_minus_id(const FinAlgebra<F>& A, const LinearMap<F>& sigma) {
  return {A, sigma, matsub(A.field(), sigma, Matrix<F>::identity(A.field(), A.dim())), std::nullopt};
}

/// (sigma, a -> c a - sigma(a) c), the inner sigma-derivation of c.
template <Field F>
SkewDerivation<F> inner_skew(const FinAlgebra<F>& A, const LinearMap<F>& sigma, const Vec<F>& c) {
  std::vector<Vec<F>> cols;
  for (std::size_t i = 0; i < A.dim(); ++i)
    cols.push_back(A.sub(A.mul(c, A.basis(i)), A.mul(apply(A.field(), sigma, A.basis(i)), c)));
  return {A, sigma, Matrix<F>::from_columns(A.field(), A.dim(), cols), std::nullopt};
}

/// On F[X]/(X^n): sigma(X) and delta(X) given, extended by multiplicativity
/// and the twisted Leibniz rule along the powers of X.
template <Field F>
SkewDerivation<F> monogenic_skew(const FinAlgebra<F>& A, const Vec<F>& sigma_x, const Vec<F>& delta_x) {
  std::vector<Vec<F>> scols, dcols;
  Vec<F> spow = A.one(), dpow = A.zero();
  Vec<F> x = A.basis(1);
  for (std::size_t k = 0; k < A.dim(); ++k) {
    scols.push_back(spow);
    dcols.push_back(dpow);
    // delta(X^{k+1}) = delta(X^k) X + sigma(X^k) delta(X)
    dpow = A.add(A.mul(dpow, x), A.mul(spow, delta_x));
    spow = A.mul(spow, sigma_x);
  }
  const F& f = A.field();
  return {A, Matrix<F>::from_columns(f, A.dim(), scols), Matrix<F>::from_columns(f, A.dim(), dcols), std::nullopt};
}

struct Violation {
  std::string axiom;
  std::string witness;
};

struct CheckReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks the skew-derivation axioms on basis pairs (bilinearity makes this
/// sufficient), plus the q-axioms when q is present.
template <Field F>
CheckReport check_skew_derivation(const SkewDerivation<F>& sd) {
  const auto& A = sd.algebra;
  const F& f = sd.field();
  CheckReport rep;
  auto name = [&](std::size_t i) { return A.names()[i]; };
  if (rank(f, sd.sigma) != A.dim()) rep.violations.push_back({"bijectivity", "sigma has rank " + std::to_string(rank(f, sd.sigma))});
  if (sd.apply_sigma(A.one()) != A.one()) rep.violations.push_back({"unit", "sigma(1) = " + A.to_string(sd.apply_sigma(A.one()))});
  if (!is_zero_vec(f, sd.apply_delta(A.one()))) rep.violations.push_back({"delta-unit", "delta(1) = " + A.to_string(sd.apply_delta(A.one()))});
  bool mult_reported = false, leibniz_reported = false;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j) {
      auto a = A.basis(i), b = A.basis(j);
      auto ab = A.mul(a, b);
      if (!mult_reported && sd.apply_sigma(ab) != A.mul(sd.apply_sigma(a), sd.apply_sigma(b))) {
        rep.violations.push_back({"multiplicativity", "(" + name(i) + "," + name(j) + ")"});
        mult_reported = true;
      }
      auto lhs = sd.apply_delta(ab);
      auto rhs = A.add(A.mul(sd.apply_delta(a), b), A.mul(sd.apply_sigma(a), sd.apply_delta(b)));
      if (!leibniz_reported && lhs != rhs) {
        rep.violations.push_back({"leibniz", "(" + name(i) + "," + name(j) + "): delta(ab) = " + A.to_string(lhs) +
                                                 " but delta(a)b + sigma(a)delta(b) = " + A.to_string(rhs)});
        leibniz_reported = true;
      }
    }
  if (sd.q) {
    const auto& q = *sd.q;
    if (!A.is_central(q)) rep.violations.push_back({"q-central", A.to_string(q)});
    Matrix<F> inv;
    if (!invert(f, A.left_mult(q), inv)) rep.violations.push_back({"q-unit", A.to_string(q)});
    if (sd.apply_sigma(q) != q) rep.violations.push_back({"sigma-fixes-q", A.to_string(sd.apply_sigma(q))});
    if (!is_zero_vec(f, sd.apply_delta(q))) rep.violations.push_back({"delta-kills-q", A.to_string(sd.apply_delta(q))});
    for (std::size_t i = 0; i < A.dim(); ++i) {
      auto a = A.basis(i);
      if (sd.apply_delta(sd.apply_sigma(a)) != A.mul(q, sd.apply_sigma(sd.apply_delta(a)))) {
        rep.violations.push_back({"q-commutation", name(i)});
        break;
      }
    }
  }
  return rep;
}

/// (sigma^{p^m}, delta^{p^m}) in characteristic p with sigma delta = delta sigma.
template <Field F>
SkewDerivation<F> pth_power(const SkewDerivation<F>& sd, unsigned m) {
  const F& f = sd.field();
  const std::int64_t p = f.characteristic();
  if (p == 0) throw MathError("pth_power requires characteristic p");
  if (!sd.commutes()) throw MathError("pth_power requires sigma delta = delta sigma");
  std::uint64_t e = 1;
  for (unsigned i = 0; i < m; ++i) e *= static_cast<std::uint64_t>(p);
  return {sd.algebra, matpow(f, sd.sigma, e), matpow(f, sd.delta, e), sd.q};
}

/// (sigma^n, sigma^n - id) for a pair with delta = sigma - id.
template <Field F>
SkewDerivation<F> sigma_shift_power(const SkewDerivation<F>& sd, std::uint64_t n) {
  if (!sd.is_sigma_minus_id()) throw MathError("sigma_shift_power requires delta = sigma - id");
  return sigma_minus_id(sd.algebra, matpow(sd.field(), sd.sigma, n));
}

/// delta^n applied by direct iteration.
template <Field F>
Vec<F> delta_n_oracle(const SkewDerivation<F>& sd, const Vec<F>& e, std::uint64_t n) {
  return sd.delta_pow(e, n);
}

/// sum_k binom(n,k) delta^k sigma^{n-k}(a) delta^{n-k}(b).
template <Field F>
Vec<F> delta_n_product(const SkewDerivation<F>& sd, const Vec<F>& a, const Vec<F>& b, std::uint64_t n) {
  if (!sd.commutes()) throw MathError("delta_n_product requires sigma delta = delta sigma");
  const auto& A = sd.algebra;
  const F& f = sd.field();
  Vec<F> out = A.zero();
  for (std::uint64_t k = 0; k <= n; ++k) {
    auto c = f.from_big(binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)));
    if (f.is_zero(c)) continue;
    auto left = sd.delta_pow(sd.sigma_pow(a, n - k), k);
    auto right = sd.delta_pow(b, n - k);
    out = A.add(out, A.scale(c, A.mul(left, right)));
  }
  return out;
}

/// The carry-free trinomial expansion of delta^n(a x b) in characteristic p.
template <Field F>
Vec<F> trinomial_expand(const SkewDerivation<F>& sd, const Vec<F>& a, const Vec<F>& x, const Vec<F>& b,
                        std::uint64_t n) {
  const F& f = sd.field();
  const std::int64_t p = f.characteristic();
  if (p == 0) throw MathError("trinomial_expand requires characteristic p");
  if (!sd.commutes()) throw MathError("trinomial_expand requires sigma delta = delta sigma");
  const auto& A = sd.algebra;
  Vec<F> out = A.zero();
  for (const auto& [i, j, k] : trinomial_indices(static_cast<std::int64_t>(n), p)) {
    auto alpha = f.from_int(alpha_coeff(i, j, k, p));
    auto ta = sd.delta_pow(sd.sigma_pow(a, n - static_cast<std::uint64_t>(i)), static_cast<std::uint64_t>(i));
    auto tx = sd.delta_pow(sd.sigma_pow(x, static_cast<std::uint64_t>(k)), static_cast<std::uint64_t>(j));
    auto tb = sd.delta_pow(b, static_cast<std::uint64_t>(k));
    out = A.add(out, A.scale(alpha, A.mul(A.mul(ta, tx), tb)));
  }
  return out;
}

struct Cor36Result {
  std::vector<std::string> precondition_failures;
  bool holds = false;
  bool preconditions_ok() const { return precondition_failures.empty(); }
};

/// Checks delta^{r+s}(a x b) = alpha_{r,0,s} delta^r sigma^s(a) sigma^s(x) delta^s(b) mod I
/// under the minimality and digit hypotheses, each reported separately.
template <Field F>
Cor36Result cor36_check(const SkewDerivation<F>& sd, const Ideal<F>& I, const Vec<F>& a, const Vec<F>& b,
                        const Vec<F>& x, std::uint64_t r, std::uint64_t s) {
  Cor36Result res;
  const F& f = sd.field();
  const std::int64_t p = f.characteristic();
  if (p == 0) throw MathError("cor36_check requires characteristic p");
  if (!sd.commutes()) throw MathError("cor36_check requires sigma delta = delta sigma");
  auto minimal_exit = [&](const Vec<F>& e, std::uint64_t t, const std::string& label) {
    if (!I.contains(e)) res.precondition_failures.push_back(label + " is not in I");
    for (std::uint64_t u = 0; u < t; ++u)
      if (!I.contains(sd.delta_pow(e, u))) {
        res.precondition_failures.push_back(label + ": exponent not minimal (delta^" + std::to_string(u) +
                                            " already leaves I)");
        break;
      }
    if (I.contains(sd.delta_pow(e, t)))
      res.precondition_failures.push_back(label + ": delta^" + std::to_string(t) + " stays in I");
  };
  minimal_exit(a, r, "a");
  minimal_exit(b, s, "b");
  if (!no_common_component(digits(static_cast<std::int64_t>(r), p), digits(static_cast<std::int64_t>(s), p)))
    res.precondition_failures.push_back("[r] and [s] share a common component");
  if (!res.preconditions_ok()) return res;
  const auto& A = sd.algebra;
  auto alpha = f.from_int(alpha_coeff(static_cast<std::int64_t>(r), 0, static_cast<std::int64_t>(s), p));
  auto lhs = sd.delta_pow(A.mul(A.mul(a, x), b), r + s);
  auto rhs = A.scale(alpha, A.mul(A.mul(sd.delta_pow(sd.sigma_pow(a, s), r), sd.sigma_pow(x, s)), sd.delta_pow(b, s)));
  res.holds = I.contains(A.sub(lhs, rhs));
  return res;
}

/// The induced pair on A / I; I must be stable under sigma and delta.
template <Field F>
SkewDerivation<F> quotient_skew(const SkewDerivation<F>& sd, const Quotient<F>& q) {
  const auto& I = q.ideal;
  const F& f = sd.field();
  if (!I.contains(image(f, sd.sigma, I)) || !I.contains(image(f, sd.delta, I)))
    throw MathError("quotient_skew: ideal is not (sigma, delta)-stable");
  std::optional<Vec<F>> qq;
  if (sd.q) qq = q.project(*sd.q);
  return {q.algebra, q.induced(sd.sigma), q.induced(sd.delta), qq};
}

/// For a sigma-ideal I, whether I + delta(I) is a two-sided ideal.
template <Field F>
bool lemma31_check(const SkewDerivation<F>& sd, const Ideal<F>& I) {
  if (!is_sigma_stable(sd.algebra, I, sd.sigma)) throw MathError("ideal is not sigma-stable");
  return is_ideal(sd.algebra, I + image(sd.field(), sd.delta, I));
}

} // namespace skewps
