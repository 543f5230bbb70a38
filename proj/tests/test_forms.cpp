#include <gtest/gtest.h>

#include <map>
#include <random>

#include "cqcalc/catalog.hpp"
#include "cqcalc/forms.hpp"

using namespace cqcalc;

namespace {

const Field Q = Field::rationals();

// Independent right action on letter tuples via the Leibniz recursion
// (ω' da_n) a = ω' d(a_n a) - (ω' a_n) da, letters as (lead, a1..an), lead 0 = unit.
using Letters = std::vector<std::size_t>;
using Terms = std::map<Letters, mpq_class>;

Terms oracle_right(const Algebra& A, const Letters& w, std::size_t a) {
  Terms out;
  if (w.size() == 1) {
    if (w[0] == 0) {
      out[{a + 1}] += 1;
    } else {
      for (const auto& [k, c] : A.product(w[0] - 1, a).entries) out[{k + 1}] += c;
    }
    return out;
  }
  Letters prefix(w.begin(), w.end() - 1);
  const std::size_t an = w.back();
  for (const auto& [k, c] : A.product(an, a).entries) {
    Letters t = prefix;
    t.push_back(k);
    out[t] += c;
  }
  for (const auto& [t, c] : oracle_right(A, prefix, an)) {
    Letters u = t;
    u.push_back(a);
    out[u] -= c;
  }
  return out;
}

void expect_zero(const SparseVector& v, const std::string& what) { EXPECT_TRUE(v.empty()) << what; }

}  // namespace

TEST(Forms, Dimensions) {
  const Forms om(catalog::dual_numbers(Q));
  EXPECT_EQ(om.dim(0), 2u);
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(om.dim(n), 3u * Forms::ipow(2, n));
}

TEST(Forms, RightActionMatchesLeibnizRecursion) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const AlgebraPtr A = catalog::random_algebra(Q, rng, 3);
    const Forms om(A);
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t i = 0; i < om.dim(n); ++i)
        for (std::size_t a = 0; a < A->dim(); ++a) {
          const SparseVector got = om.right(n, SparseVector::unit(i), SparseVector::unit(a));
          VecBuilder want(Q);
          for (const auto& [ls, c] : oracle_right(*A, om.letters(n, i), a)) want.add(om.encode(ls), c);
          EXPECT_EQ(got, want.take());
        }
  }
}

TEST(Forms, ProductIsAssociative) {
  std::mt19937_64 rng(2);
  const AlgebraPtr A = catalog::random_algebra(Field::prime(3), rng, 2);
  const Forms om(A);
  for (std::size_t m = 0; m <= 1; ++m)
    for (std::size_t n = 0; n <= 1; ++n)
      for (std::size_t r = 0; r <= 1; ++r)
        for (std::size_t i = 0; i < om.dim(m); ++i)
          for (std::size_t j = 0; j < om.dim(n); ++j)
            for (std::size_t k = 0; k < om.dim(r); ++k) {
              const auto x = SparseVector::unit(i), y = SparseVector::unit(j), z = SparseVector::unit(k);
              EXPECT_EQ(om.mul(m + n, om.mul(m, x, n, y), r, z), om.mul(m, x, n + r, om.mul(n, y, r, z)));
            }
}

TEST(Forms, OperatorIdentitiesOnRandomAlgebras) {
  std::mt19937_64 rng(3);
  for (const Field& f : {Q, Field::prime(2), Field::prime(3)}) {
    for (int t = 0; t < 6; ++t) {
      const Forms om(catalog::random_algebra(f, rng, 3));
      for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t i = 0; i < om.dim(n); ++i) {
          const SparseVector w = SparseVector::unit(i);
          expect_zero(om.d(n + 1, om.d(n, w)), "d^2");
          if (n >= 2) expect_zero(om.b(n - 1, om.b(n, w)), "b^2");
          expect_zero(om.connes_B(n + 1, om.connes_B(n, w)), "B^2");
          if (n >= 1) {
            VecBuilder lhs(f);
            lhs.add(om.b(n + 1, om.d(n, w)));
            lhs.add(om.d(n - 1, om.b(n, w)));
            EXPECT_EQ(lhs.take(), difference(f, w, om.kappa(n, w)));
          }
        }
    }
  }
}

TEST(Forms, SmallExamples) {
  const AlgebraPtr k = catalog::ground(Q);
  const Forms om(k);
  // d(e) = de, d(e de) = de de, d(1 de) = 0
  EXPECT_EQ(om.d(0, SparseVector::unit(0)), SparseVector::unit(om.index(std::nullopt, {0})));
  EXPECT_EQ(om.d(1, SparseVector::unit(om.index(0, {0}))), SparseVector::unit(om.index(std::nullopt, {0, 0})));
  EXPECT_TRUE(om.d(1, SparseVector::unit(om.index(std::nullopt, {0}))).empty());
  // κ(1 da) = da
  const SparseVector da = SparseVector::unit(om.index(std::nullopt, {0}));
  EXPECT_EQ(om.kappa(1, da), da);
  // B on degree 0 is d
  EXPECT_EQ(om.connes_B(0, SparseVector::unit(0)), da);
  // Ω^1_♮(k) = 0
  EXPECT_EQ(om.natural_quotient(1).dim(), 0u);
  EXPECT_EQ(Forms(catalog::ground(Field::prime(2))).natural_quotient(1).dim(), 0u);
  // zero multiplication: [z, dz] = 2 z dz, which vanishes only in characteristic 2
  const Forms z(catalog::zero_product(Q, 1));
  EXPECT_EQ(z.natural_quotient(1).dim(), 1u);
  const Forms z2(catalog::zero_product(Field::prime(2), 1));
  EXPECT_EQ(z2.natural_quotient(1).dim(), z2.dim(1));
}

TEST(Forms, HochschildBoundaryInDegreeOne) {
  std::mt19937_64 rng(4);
  const AlgebraPtr A = catalog::random_algebra(Q, rng, 3);
  const Forms om(A);
  for (std::size_t i = 0; i < A->dim(); ++i)
    for (std::size_t j = 0; j < A->dim(); ++j) {
      const SparseVector want = difference(Q, A->product(i, j), A->product(j, i));
      EXPECT_EQ(om.b(1, SparseVector::unit(om.index(i, {j}))), want);
    }
  // commutative algebra: b vanishes on Ω^1
  const Forms c(catalog::truncated_poly(Q, 3));
  for (std::size_t i = 0; i < c.dim(1); ++i) EXPECT_TRUE(c.b(1, SparseVector::unit(i)).empty());
}

TEST(Forms, DualNumbersBSquaredVanishesThroughDegreeThree) {
  const Forms om(catalog::dual_numbers(Q));
  for (std::size_t n = 0; n <= 2; ++n) {
    const SparseMatrix B1 = om.B_matrix(n), B2 = om.B_matrix(n + 1);
    EXPECT_TRUE(B2.compose(Q, B1).is_zero());
  }
}

TEST(Forms, DeRhamAlgebraIsAssociativeAndGraded) {
  const Forms om(catalog::nonunital_poly(Q, 2));
  const DeRhamAlgebra dr = de_rham_algebra(om, 2);
  EXPECT_EQ(dr.algebra->dim(), 2u + 6u + 12u);
  EXPECT_NO_THROW(dr.algebra->validate());
}
