#include <gtest/gtest.h>

#include <random>

#include "cqcalc/exactlin.hpp"
#include "oracle.hpp"

using namespace cqcalc;

namespace {

SparseMatrix to_sparse(const Field& f, const oracle::Dense& a) { return SparseMatrix::from_dense(f, a); }

std::vector<Field> fields() { return {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(101)}; }

}  // namespace

TEST(ExactLin, RankMatchesDenseOracle) {
  std::mt19937_64 rng(7);
  for (const Field& f : fields()) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t m = 1 + rng() % 9, n = 1 + rng() % 9;
      auto a = oracle::random_matrix(rng, m, n);
      EXPECT_EQ(rank(to_sparse(f, a), f), oracle::rank(a, f.characteristic())) << f.name();
    }
  }
}

TEST(ExactLin, KernelIsExactNullSpace) {
  std::mt19937_64 rng(11);
  for (const Field& f : fields()) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t m = 1 + rng() % 7, n = 1 + rng() % 8;
      auto a = oracle::random_matrix(rng, m, n);
      const SparseMatrix s = to_sparse(f, a);
      const Subspace ker = kernel_basis(s, f);
      EXPECT_EQ(ker.dim() + oracle::rank(a, f.characteristic()), n);
      for (const auto& v : ker.basis()) EXPECT_TRUE(s.apply(f, v).empty());
    }
  }
}

TEST(ExactLin, RrefMatchesDenseOracle) {
  std::mt19937_64 rng(3);
  for (const Field& f : fields()) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t m = 1 + rng() % 8, n = 1 + rng() % 8;
      auto a = oracle::random_matrix(rng, m, n, 5);
      std::vector<SparseVector> rows;
      for (const auto& r : a) {
        VecBuilder b(f);
        for (std::size_t j = 0; j < n; ++j) b.add(j, r[j]);
        rows.push_back(b.take());
      }
      const Subspace s = Subspace::span(f, n, rows);
      oracle::Dense ref = a;
      oracle::rref(ref, f.characteristic());
      ASSERT_EQ(s.dim(), ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(s.basis()[i].at(j), ref[i][j]);
    }
  }
}

TEST(ExactLin, SolveFindsSolutionsAndDetectsInconsistency) {
  std::mt19937_64 rng(5);
  for (const Field& f : fields()) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t m = 1 + rng() % 7, n = 1 + rng() % 7;
      auto a = oracle::random_matrix(rng, m, n);
      const SparseMatrix s = to_sparse(f, a);
      // consistent rhs: image of a random vector
      VecBuilder xb(f);
      for (std::size_t j = 0; j < n; ++j) xb.add(j, Scalar(static_cast<long>(rng() % 5) - 2));
      const SparseVector rhs = s.apply(f, xb.take());
      auto sol = solve(s, rhs, f);
      ASSERT_TRUE(sol.has_value());
      EXPECT_EQ(s.apply(f, *sol), rhs);
      // inconsistency agrees with augmented rank
      VecBuilder rb(f);
      for (std::size_t i = 0; i < m; ++i) rb.add(i, Scalar(static_cast<long>(rng() % 3)));
      const SparseVector r2 = rb.take();
      oracle::Dense aug = a;
      for (std::size_t i = 0; i < m; ++i) aug[i].push_back(r2.at(i));
      const bool consistent = oracle::rank(aug, f.characteristic()) == oracle::rank(a, f.characteristic());
      EXPECT_EQ(solve(s, r2, f).has_value(), consistent);
    }
  }
}

TEST(ExactLin, QuotientProjectionKillsSubspace) {
  std::mt19937_64 rng(9);
  for (const Field& f : fields()) {
    const std::size_t n = 7;
    auto a = oracle::random_matrix(rng, 3, n);
    std::vector<SparseVector> gens;
    for (const auto& r : a) {
      VecBuilder b(f);
      for (std::size_t j = 0; j < n; ++j) b.add(j, r[j]);
      gens.push_back(b.take());
    }
    const Subspace sub = Subspace::span(f, n, gens);
    const Quotient q = quotient_basis(n, sub, f);
    EXPECT_EQ(q.dim() + sub.dim(), n);
    for (const auto& g : gens) EXPECT_TRUE(q.project(f, g).empty());
    for (std::size_t k = 0; k < q.dim(); ++k) EXPECT_EQ(q.project(f, q.lift(k)), SparseVector::unit(k));
  }
}

TEST(ExactLin, LargeRationalEntriesStayExact) {
  const Field f = Field::rationals();
  // Hilbert matrix: nonsingular, notoriously ill-conditioned.
  const std::size_t n = 12;
  oracle::Dense h(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = mpq_class(1, static_cast<unsigned long>(i + j + 1));
  const SparseMatrix s = to_sparse(f, h);
  EXPECT_EQ(rank(s, f), n);
  auto sol = solve(s, SparseVector::unit(0), f);
  ASSERT_TRUE(sol);
  EXPECT_EQ(s.apply(f, *sol), SparseVector::unit(0));
  EXPECT_EQ(sol->at(0), mpq_class(144));
}
