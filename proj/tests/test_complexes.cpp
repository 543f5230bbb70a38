#include <gtest/gtest.h>

#include <random>

#include "cqcalc/catalog.hpp"
#include "cqcalc/mixed.hpp"
#include "oracle.hpp"

using namespace cqcalc;

namespace {
const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

oracle::Dense dense(const SparseMatrix& m) {
  oracle::Dense d(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, c] : m.column(j).entries) d[i][j] = c;
  return d;
}

std::size_t dense_rank(const SparseMatrix& m, const Field& f) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return oracle::rank(dense(m), f.characteristic());
}

// HN_n by direct dense assembly of the product totalization: chains of degree n
// are tuples (x_k) for k = n, n+2, ... and the differential sends x_k u^j to
// b x_k u^j + B x_k u^{j+1}.
std::size_t hn_oracle(const MixedComplex& m, long n) {
  auto space = [&](long deg) {
    std::vector<std::size_t> ks;
    for (long k = std::max(deg, deg % 2 == 0 ? 0L : 1L); k <= static_cast<long>(m.top()); k += 2) ks.push_back(k);
    return ks;
  };
  auto total = [&](const std::vector<std::size_t>& ks) {
    std::size_t t = 0;
    for (auto k : ks) t += m.dims[k];
    return t;
  };
  auto diff = [&](long deg) {
    const auto s = space(deg), t = space(deg - 1);
    oracle::Dense d(total(t), std::vector<mpq_class>(total(s)));
    std::size_t col = 0;
    for (auto k : s) {
      std::size_t row = 0;
      for (auto kt : t) {
        const SparseMatrix* blk = nullptr;
        if (kt + 1 == k) blk = &m.b[k];
        if (kt == k + 1) blk = &m.B[k];
        if (blk) {
          const auto db = dense(*blk);
          for (std::size_t i = 0; i < db.size(); ++i)
            for (std::size_t j = 0; j < m.dims[k]; ++j) d[row + i][col + j] = db[i][j];
        }
        row += m.dims[kt];
      }
      col += m.dims[k];
    }
    return d;
  };
  const auto out = diff(n), in = diff(n + 1);
  const std::size_t p = m.field.characteristic();
  const std::size_t r_out = out.empty() || out[0].empty() ? 0 : oracle::rank(out, p);
  const std::size_t r_in = in.empty() || in[0].empty() ? 0 : oracle::rank(in, p);
  return total(space(n)) - r_out - r_in;
}

std::vector<AlgebraPtr> panel(const Field& f) {
  return {catalog::ground(f), catalog::dual_numbers(f), catalog::truncated_poly(f, 3), catalog::product_kk(f),
          catalog::nonunital_poly(f, 2), catalog::upper_triangular(f, 2)};
}
}  // namespace

TEST(XComplex, SmallExamples) {
  const auto xk = x_complex(catalog::ground(Q));
  EXPECT_EQ(xk.even_dim, 1u);
  EXPECT_EQ(xk.odd_dim, 0u);
  EXPECT_EQ(homology_super(xk), std::make_pair(std::size_t{1}, std::size_t{0}));
  const auto x0 = x_complex(catalog::zero_product(Q, 0));
  EXPECT_EQ(homology_super(x0), std::make_pair(std::size_t{0}, std::size_t{0}));
  for (const Field& f : {Q, F2}) {
    const auto xe = x_complex(catalog::dual_numbers(f));
    EXPECT_NO_THROW(xe.validate());
    const auto [he, ho] = homology_super(xe);
    EXPECT_EQ(he, xe.even_dim - dense_rank(xe.d_eo, f) - dense_rank(xe.d_oe, f));
    EXPECT_EQ(ho, xe.odd_dim - dense_rank(xe.d_eo, f) - dense_rank(xe.d_oe, f));
  }
}

TEST(XComplex, ThetaStageOneIsX) {
  for (const Field& f : {Q, F2})
    for (const auto& a : panel(f)) {
      const auto x = x_complex(a);
      const auto t = theta_omega_stage(a, 1);
      EXPECT_EQ(x.d_eo, t.d_eo);
      EXPECT_EQ(x.d_oe, t.d_oe);
    }
}

TEST(Theta, SquareZeroAndParity) {
  std::mt19937_64 rng(11);
  for (const Field& f : {Q, F2, Field::prime(3)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto t = theta_omega_stage(catalog::ground(f), n);
      std::size_t even = 0;
      for (std::size_t r = 0; r < n; r += 2) even += Forms(catalog::ground(f)).dim(r);
      if (n % 2 == 0) even += Forms(catalog::ground(f)).natural_quotient(n).dim();
      EXPECT_EQ(t.even_dim, even);
    }
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = catalog::random_algebra(f, rng, 3);
      for (std::size_t n = 1; n <= 2; ++n) {
        const auto t = theta_omega_stage(a, n);
        const auto tot = total_super(theta_mixed(a, n));
        EXPECT_EQ(t.d_eo, tot.d_eo);
        EXPECT_EQ(t.d_oe, tot.d_oe);
      }
    }
  }
}

TEST(SuperComplex, EulerCharacteristicAndCones) {
  std::mt19937_64 rng(5);
  for (const Field& f : {Q, F2})
    for (const auto& a : panel(f)) {
      const auto c = theta_omega_stage(a, 2);
      const auto [he, ho] = homology_super(c);
      EXPECT_EQ(static_cast<long>(c.even_dim) - static_cast<long>(c.odd_dim),
                static_cast<long>(he) - static_cast<long>(ho));
      const SuperChainMap id{c, c, SparseMatrix::identity(c.even_dim), SparseMatrix::identity(c.odd_dim)};
      EXPECT_EQ(homology_super(mapping_cone(id)), std::make_pair(std::size_t{0}, std::size_t{0}));
      const SuperChainMap zero{c, c, SparseMatrix(c.even_dim, c.even_dim), SparseMatrix(c.odd_dim, c.odd_dim)};
      const auto [ze, zo] = homology_super(mapping_cone(zero));
      EXPECT_EQ(ze, he + ho);
      EXPECT_EQ(zo, ho + he);
      const auto [me, mo] = id.on_homology();
      EXPECT_EQ(me, SparseMatrix::identity(he));
      EXPECT_EQ(mo, SparseMatrix::identity(ho));
    }
}

TEST(SuperComplex, RejectsNonComplex) {
  const SparseMatrix one = SparseMatrix::identity(1);
  EXPECT_THROW(SuperComplex(Q, one, one), ValidationError);
}

TEST(Mixed, NegativeCyclicMatchesDenseOracle) {
  for (const Field& f : {Q, F2})
    for (const auto& a : panel(f))
      for (std::size_t n = 1; n <= 2; ++n) {
        const auto m = theta_mixed(a, n);
        for (long deg = -3; deg <= static_cast<long>(n) + 2; ++deg) EXPECT_EQ(hn_of_mixed(m, deg), hn_oracle(m, deg));
        EXPECT_EQ(hn_of_mixed(m, static_cast<long>(n) + 1), 0u);
      }
}

TEST(Mixed, TrivialExamples) {
  MixedComplex m{Q, {2, 3}, {SparseMatrix(0, 2), SparseMatrix(2, 3)}, {SparseMatrix(3, 2), SparseMatrix(0, 3)}};
  m.validate();
  EXPECT_EQ(hn_of_mixed(m, 1), 3u);
  EXPECT_EQ(hn_of_mixed(m, 2), 0u);
  EXPECT_EQ(hn_of_mixed(m, 0), 2u);
  EXPECT_EQ(hn_of_mixed(m, -2), 2u);
}

TEST(Mixed, ConesAndInducedMaps) {
  for (const Field& f : {Q, F2}) {
    const auto a = catalog::truncated_poly(f, 3);
    const auto m = theta_mixed(a, 2);
    std::vector<SparseMatrix> ids;
    for (auto d : m.dims) ids.push_back(SparseMatrix::identity(d));
    const MixedChainMap id{m, m, ids};
    for (long n = -2; n <= 3; ++n) {
      EXPECT_EQ(relative_hn(id, n), 0u);
      EXPECT_EQ(hn_map(id, n), SparseMatrix::identity(hn_of_mixed(m, n)));
    }
    // Augmentation k[x]/x^3 -> k.
    const auto k = catalog::ground(f);
    const AlgebraHom aug(a, k, SparseMatrix::from_columns(1, {SparseVector::unit(0), {}, {}}));
    ASSERT_TRUE(aug.multiplicative());
    const auto th = theta_mixed_map(aug, 1);
    const auto cone = mixed_cone(th);
    for (long n = -2; n <= 3; ++n) EXPECT_EQ(hn_of_mixed(cone, n), hn_oracle(cone, n));
  }
}

TEST(TowerLimits, ConstantAndZeroTowers) {
  const auto c = tower_limits(Q, {2, 2, 2}, {SparseMatrix::identity(2), SparseMatrix::identity(2)});
  EXPECT_EQ(c.lim_dims, (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(c.stabilized, (std::vector<bool>{true, true, true}));
  EXPECT_EQ(c.lim1_dim, 0u);
  const auto z = tower_limits(Q, {2, 2, 2}, {SparseMatrix(2, 2), SparseMatrix(2, 2)});
  EXPECT_EQ(z.lim_dims, (std::vector<std::size_t>{0, 0, 2}));
  EXPECT_EQ(z.surjective, (std::vector<bool>{false, false}));
}
