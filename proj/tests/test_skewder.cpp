#include "skewps/skewder.hpp"

#include "algebra_zoo.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace skewps;
using namespace skewps::testing;

namespace {
PrimeField F2(2), F3(3), F5(5);
RationalField QQ;

template <Field F>
Vec<F> random_elem(const FinAlgebra<F>& A, std::mt19937_64& rng) {
  Vec<F> v;
  for (std::size_t i = 0; i < A.dim(); ++i) v.push_back(A.field().from_int(static_cast<std::int64_t>(rng() % 7)));
  return v;
}

template <Field F>
LinearMap<F> conjugation(const FinAlgebra<F>& A, const Vec<F>& u) {
  Matrix<F> inv;
  if (!invert(A.field(), A.left_mult(u), inv)) throw MathError("not a unit");
  auto uinv = apply(A.field(), inv, A.one());
  std::vector<Vec<F>> cols;
  for (std::size_t i = 0; i < A.dim(); ++i) cols.push_back(A.mul(A.mul(u, A.basis(i)), uinv));
  return Matrix<F>::from_columns(A.field(), A.dim(), cols);
}

// F_2[X,Y]/(X^2,Y^2) with delta(X) = Y, delta(Y) = 1; basis 1, Y, X, XY.
SkewDerivation<PrimeField> xy_derivation() {
  auto T = truncated_poly(F2, 2, "X");
  auto A = tensor_product(T, truncated_poly(F2, 2, "Y"));
  std::vector<Vec<PrimeField>> cols{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  return {A, Matrix<PrimeField>::identity(F2, 4), Matrix<PrimeField>::from_columns(F2, 4, cols), std::nullopt};
}

// Commuting pairs in characteristic p used for the expansion identities.
std::vector<SkewDerivation<PrimeField>> commuting_pairs() {
  std::vector<SkewDerivation<PrimeField>> out;
  {
    auto A = truncated_poly(F3, 6);
    out.push_back(sigma_minus_id(A, monogenic_map(A, A.add(A.basis(1), A.basis(2)))));
  }
  {
    auto A = truncated_poly(F5, 5);
    out.push_back(monogenic_skew(A, A.basis(1), A.one()));
  }
  {
    auto A = matrix_algebra(F2, 2);
    Vec<PrimeField> u{1, 1, 0, 1};
    out.push_back(sigma_minus_id(A, conjugation(A, u)));
  }
  {
    auto A = matrix_algebra(F3, 2);
    Vec<PrimeField> u{1, 1, 0, 2};
    out.push_back(inner_skew(A, conjugation(A, u), u));
  }
  {
    auto A = s3_group_algebra(F3);
    out.push_back(inner_skew(A, Matrix<PrimeField>::identity(F3, A.dim()), A.basis(1)));
  }
  out.push_back(xy_derivation());
  return out;
}
} // namespace

TEST(SkewDer, LeibnizWitness) {
  auto A = truncated_poly(QQ, 2);
  auto sd = monogenic_skew(A, A.basis(1), A.one());
  auto rep = check_skew_derivation(sd);
  ASSERT_FALSE(rep.valid());
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].axiom, "leibniz");
  EXPECT_NE(rep.violations[0].witness.find("(X,X)"), std::string::npos);
}

TEST(SkewDer, ValidPairsPass) {
  for (const auto& sd : commuting_pairs()) {
    auto rep = check_skew_derivation(sd);
    EXPECT_TRUE(rep.valid()) << (rep.valid() ? "" : rep.violations[0].axiom);
    EXPECT_TRUE(sd.commutes());
  }
}

TEST(SkewDer, NonMultiplicativeSigmaRejected) {
  auto A = truncated_poly(F3, 3);
  auto sigma = Matrix<PrimeField>::identity(F3, 3);
  sigma(2, 2) = 2; // X^2 -> 2X^2 while X -> X
  auto sd = sigma_minus_id(A, sigma);
  auto rep = check_skew_derivation(sd);
  ASSERT_FALSE(rep.valid());
  EXPECT_EQ(rep.violations[0].axiom, "multiplicativity");
}

TEST(SkewDer, SingularSigmaRejected) {
  auto A = product_of_fields(F2, 2);
  Matrix<PrimeField> sigma(F2, 2, 2);
  sigma(0, 0) = 1;
  sigma(1, 0) = 1;
  auto rep = check_skew_derivation(sigma_minus_id(A, sigma));
  ASSERT_FALSE(rep.valid());
  EXPECT_EQ(rep.violations[0].axiom, "bijectivity");
}

TEST(SkewDer, QSkewAxioms) {
  // F_5[X]/(X^4): sigma(X) = 2X, delta(X) = 1 gives delta sigma = 2 sigma delta;
  // (X^4) is delta-stable because 2 has order 4 mod 5.
  auto A = truncated_poly(F5, 4);
  auto sd = monogenic_skew(A, A.scale(2, A.basis(1)), A.one());
  sd.q = A.scale(2, A.one());
  EXPECT_TRUE(check_skew_derivation(sd).valid());
  sd.q = A.scale(3, A.one());
  auto rep = check_skew_derivation(sd);
  ASSERT_FALSE(rep.valid());
  EXPECT_EQ(rep.violations[0].axiom, "q-commutation");
  sd.q = A.basis(1);
  rep = check_skew_derivation(sd);
  ASSERT_FALSE(rep.valid());
  EXPECT_EQ(rep.violations[0].axiom, "q-unit");
}

TEST(SkewDer, DeltaNProductMatchesIteration) {
  std::mt19937_64 rng(7);
  for (const auto& sd : commuting_pairs()) {
    const auto& A = sd.algebra;
    for (int trial = 0; trial < 4; ++trial) {
      auto a = random_elem(A, rng), b = random_elem(A, rng);
      for (std::uint64_t n = 0; n <= 10; ++n)
        EXPECT_EQ(delta_n_product(sd, a, b, n), delta_n_oracle(sd, A.mul(a, b), n)) << "n=" << n;
    }
  }
}

TEST(SkewDer, TrinomialExpansionMatchesIteration) {
  std::mt19937_64 rng(11);
  for (const auto& sd : commuting_pairs()) {
    const auto& A = sd.algebra;
    for (int trial = 0; trial < 3; ++trial) {
      auto a = random_elem(A, rng), x = random_elem(A, rng), b = random_elem(A, rng);
      for (std::uint64_t n = 0; n <= 12; ++n)
        EXPECT_EQ(trinomial_expand(sd, a, x, b, n), delta_n_oracle(sd, A.mul(A.mul(a, x), b), n)) << "n=" << n;
    }
  }
}

TEST(SkewDer, PthPowerIsSkewDerivation) {
  for (const auto& sd : commuting_pairs())
    for (unsigned m = 0; m <= 2; ++m) {
      auto pm = pth_power(sd, m);
      EXPECT_TRUE(check_skew_derivation(pm).valid()) << "m=" << m;
    }
}

TEST(SkewDer, PthPowerRequiresCharP) {
  auto A = truncated_poly(QQ, 3);
  EXPECT_THROW(pth_power(monogenic_skew(A, A.basis(1), A.one()), 1), MathError);
}

TEST(SkewDer, SigmaShiftPower) {
  auto A = truncated_poly(F3, 5);
  auto sd = sigma_minus_id(A, monogenic_map(A, A.add(A.basis(1), A.basis(3))));
  for (std::uint64_t n = 0; n <= 9; ++n) {
    auto s = sigma_shift_power(sd, n);
    EXPECT_TRUE(check_skew_derivation(s).valid());
    EXPECT_EQ(s.sigma, matpow(F3, sd.sigma, n));
  }
  EXPECT_THROW(sigma_shift_power(monogenic_skew(A, A.basis(1), A.one()), 2), MathError);
}

TEST(SkewDer, QFactorialInAlgebra) {
  auto A = truncated_poly(F5, 3);
  auto q = A.scale(2, A.one());
  // {3!}_2 = 1 * 3 * 7 = 21 = 1 mod 5
  EXPECT_EQ(qfactorial(A, q, 3), A.one());
  auto M = matrix_algebra(F5, 2);
  EXPECT_THROW(qfactorial(M, M.basis(1), 2), MathError);
}

TEST(SkewDer, IdealPowerInstance) {
  auto sd = xy_derivation();
  const auto& A = sd.algebra;
  auto I = ideal_generated(A, {A.basis(1), A.basis(2)}); // (X, Y)
  auto Y = A.basis(1), X = A.basis(2);
  auto res = cor36_check(sd, I, Y, X, A.one(), 1, 2);
  EXPECT_TRUE(res.preconditions_ok());
  EXPECT_TRUE(res.holds);
}

TEST(SkewDer, IdealPowerPreconditionsReportedIndividually) {
  auto sd = xy_derivation();
  const auto& A = sd.algebra;
  auto I = ideal_generated(A, {A.basis(1), A.basis(2)});
  auto res = cor36_check(sd, I, A.one(), A.basis(2), A.one(), 2, 2);
  // a = 1: outside I, delta^0 already leaves I, delta^2 stays; r = s = 2 share a digit.
  ASSERT_EQ(res.precondition_failures.size(), 4u);
  EXPECT_FALSE(res.holds);
}

TEST(SkewDer, IdealPowerExhaustiveOverIdeal) {
  auto sd = xy_derivation();
  const auto& A = sd.algebra;
  auto I = ideal_generated(A, {A.basis(1), A.basis(2)});
  auto elems = all_elements(A);
  auto exit_index = [&](const Vec<PrimeField>& e) -> std::optional<std::uint64_t> {
    for (std::uint64_t t = 0; t <= 8; ++t)
      if (!I.contains(sd.delta_pow(e, t))) return t;
    return std::nullopt;
  };
  int checked = 0;
  for (const auto& a : elems) {
    if (!I.contains(a)) continue;
    auto r = exit_index(a);
    if (!r) continue;
    for (const auto& b : elems) {
      if (!I.contains(b)) continue;
      auto s = exit_index(b);
      if (!s) continue;
      if (!no_common_component(digits(static_cast<std::int64_t>(*r), 2), digits(static_cast<std::int64_t>(*s), 2)))
        continue;
      for (const auto& x : elems) {
        auto res = cor36_check(sd, I, a, b, x, *r, *s);
        ASSERT_TRUE(res.preconditions_ok());
        EXPECT_TRUE(res.holds);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(SkewDer, SumWithDeltaImageIsIdeal) {
  // sigma-stable I with I + delta(I) an ideal.
  for (const auto& sd : commuting_pairs()) {
    const auto& A = sd.algebra;
    auto R = radical(A);
    if (!is_sigma_stable(A, R, sd.sigma)) continue;
    EXPECT_TRUE(lemma31_check(sd, R));
  }
  auto A = product_of_fields(F2, 2);
  Matrix<PrimeField> swap(F2, 2, 2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  auto sd = sigma_minus_id(A, swap);
  auto I = Subspace<PrimeField>::span(F2, 2, {A.basis(0)});
  EXPECT_THROW(lemma31_check(sd, I), MathError);
}

TEST(SkewDer, DividedPowerExamples) {
  auto A = truncated_poly(F2, 2);
  auto sd = monogenic_skew(A, A.basis(1), A.one());
  EXPECT_TRUE(check_skew_derivation(sd).valid());
  EXPECT_TRUE(check_skew_derivation(trivial_skew(A)).valid());
  EXPECT_EQ(delta_n_oracle(sd, A.basis(1), 2), A.zero());
  auto p1 = pth_power(sd, 1);
  EXPECT_EQ(p1.sigma, Matrix<PrimeField>::identity(F2, 2));
  EXPECT_TRUE(is_zero_matrix(F2, p1.delta));
  auto p0 = pth_power(sd, 0);
  EXPECT_EQ(p0.sigma, sd.sigma);
  EXPECT_EQ(p0.delta, sd.delta);

  auto I = ideal_generated(A, {A.basis(1)});
  EXPECT_TRUE(lemma31_check(sd, I));
  auto res = cor36_check(sd, I, A.basis(1), A.basis(1), A.one(), 1, 1);
  ASSERT_EQ(res.precondition_failures.size(), 1u);
  EXPECT_NE(res.precondition_failures[0].find("common component"), std::string::npos);
  auto degenerate = cor36_check(sd, I, A.basis(1), A.basis(1), A.one(), 0, 0);
  EXPECT_FALSE(degenerate.preconditions_ok());
}

TEST(SkewDer, CubeDerivationTrinomial) {
  auto A = truncated_poly(F2, 4);
  auto sd = monogenic_skew(A, A.basis(1), A.basis(3));
  ASSERT_TRUE(check_skew_derivation(sd).valid());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_elem(A, rng), x = random_elem(A, rng), b = random_elem(A, rng);
    for (std::uint64_t n = 0; n <= 4; ++n)
      EXPECT_EQ(trinomial_expand(sd, a, x, b, n), delta_n_oracle(sd, A.mul(A.mul(a, x), b), n));
  }
}

TEST(SkewDer, SwapShift) {
  auto A = product_of_fields(F2, 2);
  Matrix<PrimeField> swap(F2, 2, 2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  auto sd = sigma_minus_id(A, swap);
  auto s2 = sigma_shift_power(sd, 2);
  EXPECT_EQ(s2.sigma, Matrix<PrimeField>::identity(F2, 2));
  EXPECT_TRUE(is_zero_matrix(F2, s2.delta));
  auto s1 = sigma_shift_power(sd, 1);
  EXPECT_EQ(s1.delta, sd.delta);
  // In characteristic p the two power constructions agree.
  auto p1 = pth_power(sd, 1);
  EXPECT_EQ(p1.sigma, s2.sigma);
  EXPECT_EQ(p1.delta, s2.delta);
}
