#include <gtest/gtest.h>

#include "cqcalc/catalog.hpp"
#include "cqcalc/homotopy.hpp"
#include "cqcalc/spans.hpp"

using namespace cqcalc;

namespace {
const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

AlgebraHom hom(const AlgebraPtr& s, const AlgebraPtr& t, std::vector<SparseVector> cols) {
  return AlgebraHom(s, t, SparseMatrix::from_columns(t->dim(), std::move(cols)));
}

SparseVector vec(const Field& f, std::vector<std::pair<std::size_t, long>> e) {
  VecBuilder b(f);
  for (auto [i, c] : e) b.add(i, Scalar(c));
  return b.take();
}
}  // namespace

TEST(NilHomotopy, SpecExamples) {
  const auto k = catalog::ground(Q);
  const auto eps = catalog::dual_numbers(Q);
  const auto id = AlgebraHom::identity(eps);
  const auto same = nil_homotopic(id, id, 3);
  ASSERT_TRUE(same);
  EXPECT_EQ(same->stage, 1u);
  EXPECT_TRUE(same->verified());

  // e ↦ E11 and e ↦ E11 + E12 are both idempotent and differ by the square-zero E12.
  const auto m2 = catalog::matrices(Q, 2);
  const auto f = hom(k, m2, {vec(Q, {{0, 1}})});
  const auto g = hom(k, m2, {vec(Q, {{0, 1}, {1, 1}})});
  ASSERT_TRUE(f.multiplicative() && g.multiplicative());
  const auto w = nil_homotopic(f, g, 4);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->stage, 2u);
  EXPECT_TRUE(w->verified());
  // 1 + ε is not idempotent, so k -> k[ε]/ε² has no map e ↦ 1 + ε.
  EXPECT_FALSE(hom(k, eps, {vec(Q, {{0, 1}, {1, 1}})}).multiplicative());
  const auto aug = hom(eps, eps, {vec(Q, {{0, 1}}), SparseVector{}});
  const auto we = nil_homotopic(id, aug, 4);
  ASSERT_TRUE(we);
  EXPECT_EQ(we->stage, 2u);
  EXPECT_TRUE(we->verified());

  const auto one = hom(k, k, {vec(Q, {{0, 1}})});
  const auto zero = hom(k, k, {SparseVector{}});
  EXPECT_FALSE(nil_homotopic(one, zero, 6));
  const auto chain = nil_chain({f, g, f}, 4);
  EXPECT_EQ(chain, (std::vector<std::optional<std::size_t>>{2u, 2u}));
}

TEST(NilHomotopy, OverF2) {
  const auto eps = catalog::dual_numbers(F2);
  const auto aug = hom(eps, eps, {vec(F2, {{0, 1}}), SparseVector{}});
  const auto w = nil_homotopic(AlgebraHom::identity(eps), aug, 3);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->stage, 2u);
  EXPECT_TRUE(w->verified());
}

TEST(PolyWitness, ConstantAndDegreeHomotopies) {
  const auto eps = catalog::dual_numbers(Q);
  const auto id = AlgebraHom::identity(eps);
  const auto p = poly_extension(eps, 2);
  std::vector<SparseVector> cols;
  for (std::size_t i = 0; i < eps->dim(); ++i) cols.push_back(SparseVector::unit(p.index(i, 0)));
  const AlgebraHom h0(eps, p.algebra, SparseMatrix::from_columns(p.algebra->dim(), cols));
  EXPECT_TRUE(poly_witness_check(id, id, p, h0));

  const auto dr = de_rham_algebra(Forms(catalog::ground(Q)), 2);
  const auto b = dr.algebra;
  const auto pb = poly_extension(b, 2);
  const auto h = degree_homotopy(b, pb);
  std::vector<SparseVector> proj(b->dim());
  for (std::size_t i = 0; i < b->dim(); ++i)
    if (b->degree(i) == 0) proj[i] = SparseVector::unit(i);
  const AlgebraHom incl_proj(b, b, SparseMatrix::from_columns(b->dim(), proj));
  const auto idb = AlgebraHom::identity(b);
  EXPECT_TRUE(poly_witness_check(incl_proj, idb, pb, h));
  EXPECT_FALSE(poly_witness_check(idb, idb, pb, h));
  SparseMatrix bad = h.matrix;
  bad.set_column(0, SparseVector::unit(pb.index(0, 1)));
  EXPECT_FALSE(poly_witness_check(incl_proj, idb, pb, AlgebraHom(b, pb.algebra, bad)));
  EXPECT_THROW(degree_homotopy(b, poly_extension(b, 1)), TruncationTooSmall);
}

TEST(Spans, TaylorSpanPasses) {
  for (const Field& f : {Q, F2, F3}) {
    const auto t = taylor_span(4, 3, 3, f);
    EXPECT_TRUE(verify_span(t.span).passed());
    // T(x^2) = x^2 - y^2 with x = y + s: D1 = 2ys, D2 = s^2.
    const SparseVector x2 = SparseVector::unit(1);
    EXPECT_EQ(t.span.Di(1).apply(f, x2), vec(f, {{t.monomial(1, 1), 2}}));
    EXPECT_EQ(t.span.Di(2).apply(f, x2), vec(f, {{t.monomial(0, 2), 1}}));
  }
}

TEST(Spans, ZeroAndPerturbedSpans) {
  const auto t = taylor_span(3, 2, 2, F3);
  SpanData zero{t.span.u, {SparseMatrix(t.target->dim(), 3), SparseMatrix(t.target->dim(), 3)}};
  EXPECT_TRUE(verify_span(zero).passed());
  SpanData bad = t.span;
  bad.D[0].set_column(1, scaled(F3, bad.D[0].column(1), Scalar(2)));
  const auto r = verify_span(bad);
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(r.first_failure->degree, 1u);
  EXPECT_FALSE(r.first_failure->residual.empty());
}

TEST(Connections, SolverAndSplitting) {
  for (const Field& f : {Q, F2}) {
    EXPECT_TRUE(find_connection(catalog::ground(f)));
    EXPECT_FALSE(find_connection(catalog::dual_numbers(f)));
    EXPECT_TRUE(find_connection(catalog::product_kk(f)));
    EXPECT_TRUE(find_connection(catalog::upper_triangular(f, 2)));
    for (const auto& a : {catalog::ground(f), catalog::product_kk(f), catalog::upper_triangular(f, 2)}) {
      const auto c = find_connection(a);
      ASSERT_TRUE(c);
      EXPECT_EQ(connection_defects(*c), 0u);
      // s(a) = ρa + φ(a) splits U_2 A -> A multiplicatively.
      const auto u = universal_model_trunc(a, 2);
      std::vector<SparseVector> cols;
      for (std::size_t i = 0; i < a->dim(); ++i)
        cols.push_back(sum(f, u.embed(0, SparseVector::unit(i)), u.embed(1, c->phi.column(i))));
      const AlgebraHom s(a, u.algebra, SparseMatrix::from_columns(u.algebra->dim(), cols));
      EXPECT_TRUE(s.multiplicative());
      EXPECT_EQ(u.projection.after(s).matrix, SparseMatrix::identity(a->dim()));
    }
  }
}

TEST(Connections, TruncatedTensorAlgebra) {
  const auto t = tensor_algebra_trunc(2, 3, Q);
  EXPECT_EQ(connection_defects(tensor_connection(t)), 0u);
  const auto t1 = tensor_algebra_trunc(1, 3, Q);
  EXPECT_TRUE(find_connection(t1.algebra, true));
  EXPECT_FALSE(find_connection(t1.algebra, false));
}

TEST(Spans, ExtendDifferentialOnTensorAlgebra) {
  const std::size_t N = 3;
  const auto t = tensor_algebra_trunc(2, N, Q);
  const Forms om(t.algebra);
  const auto dr = de_rham_algebra(om, 2, static_cast<int>(N));
  std::vector<SparseVector> u, d1;
  for (std::size_t i = 0; i < t.algebra->dim(); ++i) {
    u.push_back(dr.embed(0, SparseVector::unit(i)));
    d1.push_back(dr.embed(1, om.d(0, SparseVector::unit(i))));
  }
  const SpanData s{AlgebraHom(t.algebra, dr.algebra, SparseMatrix::from_columns(dr.algebra->dim(), u)),
                   {SparseMatrix::from_columns(dr.algebra->dim(), d1)}};
  ASSERT_TRUE(verify_span(s).passed());
  const auto e = extend_span(s, tensor_connection(t));
  EXPECT_TRUE(verify_span(e).passed());
  for (std::size_t v = 0; v < 2; ++v) {
    EXPECT_TRUE(e.Di(2).column(t.words.encode({v})).empty());
    for (std::size_t w = 0; w < 2; ++w) {
      const auto dvdw = om.mul(1, om.d(0, SparseVector::unit(t.words.encode({v}))), 1,
                               om.d(0, SparseVector::unit(t.words.encode({w}))));
      EXPECT_EQ(e.Di(2).column(t.words.encode({v, w})), dr.embed(2, dvdw));
    }
  }
  EXPECT_THROW(extend_span(e, tensor_connection(t)), TruncationTooSmall);
}

TEST(Spans, ExtendZeroAndTaylor) {
  for (const Field& f : {Q, F3}) {
    const auto partial = taylor_span(4, 3, 1, f);
    const auto conn = tensor_connection(partial.source);
    auto s = extend_span(partial.span, conn);
    s = extend_span(s, conn);
    const auto full = taylor_span(4, 3, 3, f);
    EXPECT_EQ(s.D, full.span.D);
    SpanData zero{partial.span.u, {}};
    const auto z = extend_span(zero, conn);
    EXPECT_TRUE(z.Di(1).is_zero());
  }
}
