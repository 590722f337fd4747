#include "skewps/filtration.hpp"

#include "algebra_zoo.hpp"

#include <gtest/gtest.h>

using namespace skewps;
using namespace skewps::testing;

namespace {
PrimeField F2(2), F3(3), F5(5);

Filtration<PrimeField> x_adic(const FinAlgebra<PrimeField>& A) {
  return Filtration<PrimeField>::adic(A, ideal_generated(A, {A.basis(1)}));
}

Subspace<PrimeField> span_of(const FinAlgebra<PrimeField>& A, std::initializer_list<std::size_t> idx) {
  std::vector<Vec<PrimeField>> gens;
  for (auto i : idx) gens.push_back(A.basis(i));
  return Subspace<PrimeField>::span(A.field(), A.dim(), gens);
}
} // namespace

TEST(Filtration, TAdicValues) {
  auto A = truncated_poly(F5, 7);
  auto w = x_adic(A);
  EXPECT_EQ(w.length(), 7u);
  EXPECT_TRUE(w.value(A.zero()).is_infinite());
  for (std::size_t k = 0; k < 7; ++k) EXPECT_EQ(w.value(A.basis(k)), ExtInt::from_int(static_cast<std::int64_t>(k)));
  EXPECT_EQ(w.value(A.add(A.basis(2), A.basis(5))), ExtInt::from_int(2));
  EXPECT_TRUE(check_axioms(w).valid());
}

TEST(Filtration, HalfScale) {
  auto A = truncated_poly(F2, 4);
  auto w = Filtration<PrimeField>::adic(A, ideal_generated(A, {A.basis(1)}), 2);
  EXPECT_EQ(w.value(A.basis(1)), ExtInt::from_halves(1));
  EXPECT_EQ(w.value(A.basis(3)), ExtInt::from_halves(3));
  EXPECT_THROW(Filtration<PrimeField>::adic(A, whole_ideal(A), 3), MathError);
}

TEST(Filtration, NonNilpotentAdicRejected) {
  auto A = product_of_fields(F2, 2);
  auto I = ideal_generated(A, {A.basis(0)});
  EXPECT_THROW(Filtration<PrimeField>::adic(A, I), MathError);
}

TEST(Filtration, BadChainReported) {
  auto A = truncated_poly(F2, 4);
  auto w = Filtration<PrimeField>::chain(A, {whole_ideal(A), span_of(A, {1, 2, 3}), span_of(A, {3})});
  auto rep = check_axioms(w);
  ASSERT_FALSE(rep.valid());
  EXPECT_EQ(rep.violations[0].axiom, "product");
  EXPECT_NE(rep.violations[0].witness.find("F_1*F_1"), std::string::npos);
}

TEST(Filtration, EndoDegree) {
  auto A = truncated_poly(F3, 9);
  auto w = x_adic(A);
  EXPECT_TRUE(endo_degree(w, Matrix<PrimeField>(F3, 9, 9)).is_infinite());
  EXPECT_EQ(endo_degree(w, Matrix<PrimeField>::identity(F3, 9)), ExtInt::from_int(0));
  // delta(t) = t^{p+1}
  auto sd = monogenic_skew(A, A.basis(1), A.basis(4));
  ASSERT_TRUE(check_skew_derivation(sd).valid());
  EXPECT_EQ(endo_degree(w, sd.delta), ExtInt::from_int(3));
  EXPECT_TRUE(is_compatible(w, sd));
  EXPECT_TRUE(is_compatible(w, trivial_skew(A)));
}

TEST(Filtration, EndoDegreeMatchesSweep) {
  // Brute force over every nonzero element of F_2[X]/(X^4).
  auto A = truncated_poly(F2, 4);
  auto w = x_adic(A);
  auto sd = sigma_minus_id(A, monogenic_map(A, A.add(A.basis(1), A.basis(2))));
  ExtInt best = ExtInt::infinity();
  for (const auto& e : all_elements(A)) {
    if (is_zero_vec(F2, e)) continue;
    auto v = w.value(sd.apply_delta(e));
    if (!v.is_infinite()) best = std::min(best, v - w.value(e));
  }
  EXPECT_EQ(endo_degree(w, sd.delta), best);
}

TEST(Filtration, IncompatibleDividedPower) {
  auto A = truncated_poly(F2, 2);
  auto w = Filtration<PrimeField>::chain(A, {whole_ideal(A), ideal_generated(A, {A.basis(1)})});
  auto sd = monogenic_skew(A, A.basis(1), A.one());
  EXPECT_EQ(endo_degree(w, sd.delta), ExtInt::from_int(-1));
  EXPECT_FALSE(is_compatible(w, sd));
}

TEST(Filtration, AssocGradedTAdic) {
  auto A = truncated_poly(F3, 5);
  auto w = x_adic(A);
  auto gr = assoc_graded(w, 0, 5);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(gr.dim(k), 1u);
  ASSERT_TRUE(gr.realization.has_value());
  const auto& G = *gr.realization;
  auto t = symbol_in_realization(w, gr, A.basis(1));
  EXPECT_EQ(G.mul(t, t), symbol_in_realization(w, gr, A.basis(2)));
  EXPECT_THROW(assoc_graded(w, 0, 6), MathError);
  auto partial = assoc_graded(w, 1, 3);
  EXPECT_FALSE(partial.realization.has_value());
  EXPECT_EQ(partial.products.size(), 1u); // only degree 1 * degree 1 lands in the window
}

TEST(Filtration, AssocGradedDividedPower) {
  auto A = truncated_poly(F2, 2);
  auto w = Filtration<PrimeField>::chain(A, {whole_ideal(A), ideal_generated(A, {A.basis(1)})});
  auto gr = assoc_graded(w, 0, 2);
  ASSERT_TRUE(gr.realization);
  const auto& G = *gr.realization;
  EXPECT_EQ(G.dim(), 2u);
  EXPECT_EQ(G.mul(G.basis(1), G.basis(1)), G.zero());
  EXPECT_EQ(G.one(), G.basis(0));
}

TEST(Filtration, PrincipalSymbol) {
  auto A = truncated_poly(F5, 4);
  auto w = x_adic(A);
  auto e = A.add(A.scale(3, A.basis(2)), A.basis(3));
  auto s = principal_symbol(w, e);
  EXPECT_EQ(s.level, 2u);
  EXPECT_EQ(s.value, ExtInt::from_int(2));
  ASSERT_EQ(s.repr.size(), 1u);
  EXPECT_EQ(s.repr[0], "3");
  EXPECT_TRUE(principal_symbol(w, A.zero()).value.is_infinite());
}

TEST(Filtration, CompatibleSigmaPreservesSymbols) {
  auto A = truncated_poly(F3, 5);
  auto w = x_adic(A);
  auto sd = sigma_minus_id(A, monogenic_map(A, A.add(A.basis(1), A.basis(2))));
  ASSERT_TRUE(is_compatible(w, sd));
  for (const auto& e : all_elements(A)) {
    if (is_zero_vec(F3, e)) continue;
    auto se = sd.apply_sigma(e);
    EXPECT_EQ(w.value(se), w.value(e));
    EXPECT_EQ(principal_symbol(w, se).repr, principal_symbol(w, e).repr);
  }
}

TEST(Filtration, QuotientCosetSweep) {
  std::vector<std::pair<Filtration<PrimeField>, Ideal<PrimeField>>> cases;
  {
    auto A = truncated_poly(F2, 4);
    cases.push_back({x_adic(A), ideal_generated(A, {A.basis(2)})});
    cases.push_back({x_adic(A), zero_ideal(A)});
    cases.push_back({x_adic(A), whole_ideal(A)});
  }
  {
    auto A = upper_triangular(F2, 3);
    cases.push_back({Filtration<PrimeField>::adic(A, radical(A)), ideal_generated(A, {A.basis(2)})});
  }
  {
    auto A = truncated_poly(F3, 4);
    cases.push_back({x_adic(A), ideal_generated(A, {A.add(A.basis(3), A.basis(3))})});
  }
  for (const auto& [w, I] : cases) {
    const auto& A = w.algebra();
    auto qf = quotient_filtration(w, I);
    EXPECT_TRUE(check_axioms(qf.filtration).valid());
    auto elems = all_elements(A);
    for (const auto& r : elems) {
      ExtInt sup = w.value(r);
      for (const auto& y : elems)
        if (I.contains(y)) sup = std::max(sup, w.value(A.add(r, y)));
      EXPECT_EQ(qf.filtration.value(qf.quotient.project(r)), sup);
    }
  }
}

TEST(Filtration, QuotientExample) {
  auto A = truncated_poly(F2, 4);
  auto qf = quotient_filtration(x_adic(A), ideal_generated(A, {A.basis(2)}));
  EXPECT_EQ(qf.filtration.value(qf.quotient.project(A.basis(1))), ExtInt::from_int(1));
  EXPECT_TRUE(qf.filtration.value(qf.quotient.project(A.basis(3))).is_infinite());
}

TEST(Filtration, QuotientStaysCompatible) {
  auto A = truncated_poly(F3, 6);
  auto w = x_adic(A);
  auto sd = sigma_minus_id(A, monogenic_map(A, A.add(A.basis(1), A.basis(2))));
  ASSERT_TRUE(is_compatible(w, sd));
  for (std::size_t k = 1; k <= 6; ++k) {
    auto I = k < 6 ? ideal_generated(A, {A.basis(k)}) : zero_ideal(A);
    auto qf = quotient_filtration(w, I);
    auto qsd = quotient_skew(sd, qf.quotient);
    EXPECT_TRUE(check_skew_derivation(qsd).valid());
    EXPECT_TRUE(is_compatible(qf.filtration, qsd));
  }
}

TEST(Filtration, GradedPrimeImpliesPrime) {
  std::vector<Filtration<PrimeField>> corpus;
  for (const auto& A : {matrix_algebra(F2, 2), product_of_fields(F3, 2), truncated_poly(F2, 3),
                        upper_triangular(F2, 2), s3_group_algebra(F3)}) {
    corpus.push_back(Filtration<PrimeField>::chain(A, {whole_ideal(A)}));
    auto R = radical(A);
    if (!R.is_zero()) corpus.push_back(Filtration<PrimeField>::adic(A, R));
  }
  int prime_gr = 0;
  for (const auto& w : corpus) {
    auto gr = assoc_graded(w, 0, w.length());
    ASSERT_TRUE(gr.realization);
    if (is_prime_fd(*gr.realization)) {
      ++prime_gr;
      EXPECT_TRUE(is_prime_fd(w.algebra()));
    }
  }
  EXPECT_GT(prime_gr, 0);
}

TEST(Filtration, ShiftPowerDegree) {
  auto A = truncated_poly(F3, 9);
  auto w = x_adic(A);
  auto sd = sigma_minus_id(A, monogenic_map(A, A.add(A.basis(1), A.basis(2))));
  for (unsigned n = 0; n <= 2; ++n) EXPECT_TRUE(lemma16_check(w, sd, n));
  // sigma of order p: sigma^{p} - id = 0 has infinite degree.
  auto B = product_of_fields(F3, 3);
  Matrix<PrimeField> cyc(F3, 3, 3);
  cyc(1, 0) = 1;
  cyc(2, 1) = 1;
  cyc(0, 2) = 1;
  auto wb = Filtration<PrimeField>::chain(B, {whole_ideal(B)});
  EXPECT_THROW(lemma16_check(wb, sigma_minus_id(B, cyc), 1), MathError); // deg(sigma - id) = 0 here
  RationalField QQ;
  auto Q = truncated_poly(QQ, 3);
  auto wq = Filtration<RationalField>::adic(Q, ideal_generated(Q, {Q.basis(1)}));
  EXPECT_THROW(lemma16_check(wq, trivial_skew(Q), 1), MathError);
}
