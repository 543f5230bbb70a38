#include <gtest/gtest.h>

#include "cqcalc/catalog.hpp"
#include "cqcalc/constructions.hpp"
#include "cqcalc/cylinder.hpp"

using namespace cqcalc;

namespace {
const Field Q = Field::rationals();
}

TEST(Tensor, DimensionsAndProducts) {
  const auto t = tensor_algebra_trunc(2, 3, Q);
  EXPECT_EQ(t.algebra->dim(), 14u);
  EXPECT_NO_THROW(t.algebra->validate());
  const auto t1 = tensor_algebra_trunc(1, 2, Q);
  EXPECT_EQ(t1.algebra->labels(), (std::vector<std::string>{"t", "t^2"}));
  EXPECT_EQ(t1.algebra->product(0, 0), SparseVector::unit(1));
  EXPECT_TRUE(t1.algebra->product(0, 1).empty());
  const auto t4 = tensor_algebra_trunc(1, 4, Q);
  EXPECT_EQ(t4.algebra->product(1, 1), SparseVector::unit(3));
}

TEST(FreeProduct, GroundTimesGround) {
  const auto k = catalog::ground(Q);
  const auto fp = free_product_trunc(k, k, 3);
  EXPECT_EQ(fp.algebra->dim(), 6u);
  EXPECT_NO_THROW(fp.algebra->validate());
  EXPECT_TRUE(fp.inc_a.multiplicative());
  EXPECT_TRUE(fp.inc_b.multiplicative());
  const std::size_t xy = fp.index.at(FPWord{0, {0, 0}});
  EXPECT_TRUE(fp.algebra->product(xy, xy).empty());
  const std::size_t x = fp.index.at(FPWord{0, {0}});
  EXPECT_EQ(fp.algebra->product(x, xy), SparseVector::unit(xy));  // x·xy = x²y = xy
  EXPECT_EQ(fp.summand(FPSummand::ABA).size(), 1u);
  const auto fp1 = free_product_trunc(k, catalog::dual_numbers(Q), 1);
  EXPECT_EQ(fp1.algebra->dim(), 3u);
  EXPECT_TRUE(fp1.algebra->product(0, 1).empty());
}

TEST(FreeProduct, AssociativeWithNilpotentFactor) {
  const auto fp = free_product_trunc(catalog::ground(Q), catalog::dual_numbers(Q), 4);
  EXPECT_NO_THROW(fp.algebra->validate());
}

TEST(Cylinder, StageOneIsA) {
  const auto a = catalog::dual_numbers(Q);
  const auto c = q_construction(a, 1);
  EXPECT_EQ(c.algebra->dim(), 2u);
  EXPECT_EQ(c.fold.matrix, SparseMatrix::identity(2));
}

TEST(Cylinder, GroundStageTwoAndFoldIdentities) {
  const auto c = q_construction(catalog::ground(Q), 2);
  EXPECT_EQ(c.algebra->dim(), 3u);
  for (const auto& a : {catalog::ground(Q), catalog::dual_numbers(Q), catalog::product_kk(Q),
                        catalog::truncated_poly(Field::prime(2), 3)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto cyl = q_construction(a, n);
      EXPECT_NO_THROW(cyl.algebra->validate()) << n;
      EXPECT_TRUE(cyl.fold.multiplicative());
      EXPECT_EQ(cyl.fold.after(cyl.d0).matrix, SparseMatrix::identity(a->dim()));
      EXPECT_EQ(cyl.fold.after(cyl.d1).matrix, SparseMatrix::identity(a->dim()));
    }
  }
}

TEST(Cylinder, TooSmallWordBoundIsReported) {
  EXPECT_THROW(q_construction(catalog::ground(Q), 3, 1), TruncationTooSmall);
}

TEST(UniversalModel, DimensionsMatchEvenForms) {
  const auto k = catalog::ground(Q);
  EXPECT_EQ(universal_model_trunc(k, 1).algebra->dim(), 1u);
  EXPECT_EQ(universal_model_trunc(k, 2).algebra->dim(), 3u);
  EXPECT_EQ(universal_model_trunc(k, 3).algebra->dim(), 5u);
  for (const auto& a : {catalog::dual_numbers(Q), catalog::product_kk(Field::prime(2)), catalog::upper_triangular(Q, 2)}) {
    const Forms om(a);
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto u = universal_model_trunc(a, n);
      std::size_t want = 0;
      for (std::size_t i = 0; i < n; ++i) want += om.dim(2 * i);
      EXPECT_EQ(u.algebra->dim(), want);
      EXPECT_NO_THROW(u.algebra->validate());
      EXPECT_TRUE(u.projection.multiplicative());
    }
  }
}

TEST(UniversalModel, KernelSquaredVanishesAtStageTwo) {
  const auto u = universal_model_trunc(catalog::dual_numbers(Q), 2);
  std::vector<SparseVector> ker;
  for (std::size_t i = u.offset[1]; i < u.algebra->dim(); ++i) ker.push_back(SparseVector::unit(i));
  const IdealBasis k = IdealBasis::generated(u.algebra, ker);
  EXPECT_EQ(k.dim(), u.algebra->dim() - 2);
  EXPECT_EQ(ideal_power(k, 2).dim(), 0u);
}

TEST(PowerAlgebra, DimensionsAndRetraction) {
  const auto k = catalog::ground(Q);
  const auto p1 = power_algebra_trunc(k, 1, 1);
  EXPECT_EQ(p1.algebra->dim(), 1u);
  const auto p = power_algebra_trunc(k, 1, 4);
  EXPECT_EQ(p.algebra->dim(), 1u + 4u + 8u + 16u);
  EXPECT_NO_THROW(p.algebra->validate());
  EXPECT_TRUE(p.inclusion.multiplicative());
  EXPECT_TRUE(p.retraction.multiplicative());
  EXPECT_EQ(p.retraction.after(p.inclusion).matrix, SparseMatrix::identity(1));
  const auto p2 = power_algebra_trunc(k, 1, 2);
  EXPECT_EQ(p2.algebra->component(1).size(), 4u);
  // the kernel of the retraction is nilpotent of order n
  std::vector<SparseVector> pos;
  for (std::size_t i = 1; i < p.algebra->dim(); ++i) pos.push_back(SparseVector::unit(i));
  EXPECT_EQ(ideal_power(IdealBasis::generated(p.algebra, pos), 4).dim(), 0u);
  EXPECT_NO_THROW(power_algebra_trunc(catalog::dual_numbers(Q), 2, 3).algebra->validate());
}

#include "cqcalc/tower.hpp"

TEST(Towers, StructureMapsAreSurjectiveHomomorphisms) {
  const auto k = catalog::ground(Q);
  const Tower u = tower_of(Construction::UniversalModel, k, {}, 3);
  EXPECT_EQ(u.stages[0]->dim(), 1u);
  EXPECT_EQ(u.stages[1]->dim(), 3u);
  EXPECT_EQ(u.stages[2]->dim(), 5u);
  const Tower c = tower_of(Construction::Cylinder, catalog::dual_numbers(Q), {}, 3);
  EXPECT_EQ(c.stages[0]->dim(), 2u);
  EXPECT_EQ(c.composite(2, 0).matrix, q_construction(catalog::dual_numbers(Q), 3).fold.matrix);
  TowerParams pp;
  pp.v_dim = 1;
  EXPECT_NO_THROW(tower_of(Construction::PowerAlgebra, k, pp, 4));
  TowerParams fp;
  fp.other = catalog::dual_numbers(Q);
  EXPECT_NO_THROW(tower_of(Construction::FreeProduct, k, fp, 4));
}
