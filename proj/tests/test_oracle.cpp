#include "skewps/oracle.hpp"

#include "algebra_zoo.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace skewps;
using namespace skewps::testing;
using namespace skewps::oracle;

TEST(Oracle, SingleDeltaOnThreeAtoms) {
  auto e = symbolic_delta(word_expr("axb"));
  ASSERT_EQ(e.size(), 3u);
  for (const auto& [w, c] : e) EXPECT_EQ(c, 1);
}

TEST(Oracle, BinomialIdentityOverIntegers) { EXPECT_TRUE(binomial_identity_holds(8)); }

TEST(Oracle, CertifyP2) {
  auto t = certify_alpha_table(2, 8);
  EXPECT_FALSE(t.rows.empty());
  bool seen = false;
  for (const auto& r : t.rows)
    if (r.n == 3 && r.i == 1 && r.j == 0 && r.k == 2) {
      EXPECT_EQ(r.alpha, 1);
      seen = true;
    }
  EXPECT_TRUE(seen);
}

TEST(Oracle, CertifyP3) { EXPECT_NO_THROW(certify_alpha_table(3, 9)); }

TEST(Oracle, CertifyP5) { EXPECT_NO_THROW(certify_alpha_table(5, 12)); }

TEST(Oracle, SupportAtNEqualsP) {
  // n = p has a single nonzero digit 1, so only the three "all in one slot" triples survive.
  for (std::int64_t p : {2, 3, 5, 7}) {
    auto t = certify_alpha_table(p, p);
    std::size_t count = 0;
    for (const auto& r : t.rows)
      if (r.n == p) {
        ++count;
        EXPECT_EQ(r.alpha, 1);
      }
    EXPECT_EQ(count, 3u);
  }
}

TEST(Oracle, TableTextIsDeterministic) {
  EXPECT_EQ(certify_alpha_table(3, 6).text(), certify_alpha_table(3, 6).text());
  EXPECT_EQ(certify_alpha_table(2, 1).text(), "alpha-table p=2 n_max=1\n0 0 0 0 1\n1 0 0 1 1\n1 0 1 0 1\n1 1 0 0 1\n");
}

TEST(Oracle, RejectsNonPrime) { EXPECT_THROW(certify_alpha_table(4, 3), MathError); }

TEST(Oracle, EvaluationHomomorphism) {
  PrimeField F3(3), F2(2);
  std::vector<SkewDerivation<PrimeField>> pairs;
  {
    auto A = truncated_poly(F3, 6);
    pairs.push_back(sigma_minus_id(A, monogenic_map(A, A.add(A.basis(1), A.basis(2)))));
  }
  {
    auto A = matrix_algebra(F2, 2);
    auto u = Vec<PrimeField>{1, 1, 0, 1};
    std::vector<Vec<PrimeField>> cols;
    // u is an involution over F_2, so conjugation is a -> u a u.
    for (std::size_t i = 0; i < 4; ++i) cols.push_back(A.mul(A.mul(u, A.basis(i)), u));
    pairs.push_back(sigma_minus_id(A, Matrix<PrimeField>::from_columns(F2, 4, cols)));
  }
  std::mt19937_64 rng(5);
  int spots = 0;
  for (const auto& sd : pairs) {
    const auto& A = sd.algebra;
    auto rnd = [&] {
      Vec<PrimeField> v;
      for (std::size_t i = 0; i < A.dim(); ++i) v.push_back(A.field().from_int(static_cast<std::int64_t>(rng() % 5)));
      return v;
    };
    for (int trial = 0; trial < 50; ++trial, ++spots) {
      auto a = rnd(), x = rnd(), b = rnd();
      auto n = static_cast<std::int64_t>(rng() % 8);
      auto e = symbolic_delta_pow(word_expr("axb"), n);
      auto concrete = delta_n_oracle(sd, A.mul(A.mul(a, x), b), static_cast<std::uint64_t>(n));
      EXPECT_EQ(evaluate(e, sd, {{'a', a}, {'x', x}, {'b', b}}), concrete);
    }
  }
  EXPECT_EQ(spots, 100);
}
