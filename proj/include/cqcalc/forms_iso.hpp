#pragma once

// Canonical identifications between the normal-form models and forms:
//   qA^n/qA^{n+1} -> Ω^n A           (ã0 qa1..qan ↦ ã0 da1..dan)
//   U_n A -> even forms of degree < 2n (ρa0 ω(a1,a2)... ↦ a0 da1 da2 ...)
//   α: Cyl_n(TV) -> Ω^{<n}(TV)        (∂0 x ↦ x, qv ↦ dv), weight-truncated.

#include <optional>
#include <string>
#include <vector>

#include "cqcalc/constructions.hpp"
#include "cqcalc/cylinder.hpp"

namespace cqcalc {

struct IsoReport {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  bool bijective = false;
  bool compatible = false;  // equivariance / commuting triangle / multiplicativity, per construction
  SparseMatrix map;         // the computed linear map (columns indexed by the source basis)

  bool passed() const { return bijective && compatible; }
};

/// The matrix sending ã0 da1..dan (Ω^n basis) to the class of ∂0ã0·qa1⋯qan
/// in qA^n/qA^{n+1}, computed inside Cyl_{n+1}(A).  Bijectivity and
/// A-bimodule equivariance (for both ∂0 and ∂1 actions) are checked.
inline IsoReport q_graded_iso(const AlgebraPtr& a, std::size_t n) {
  IsoReport r;
  const Forms om(a);
  const Field& f = a->field();
  if (n == 0) {
    const Cylinder c = q_construction(a, 1);
    r.map = c.fold.matrix;
    r.source_dim = r.target_dim = a->dim();
    r.rank = rank(r.map, f);
    r.bijective = r.rank == a->dim();
    r.compatible = c.fold.multiplicative();
    return r;
  }
  const Cylinder cyl = q_construction(a, n + 1);
  const Algebra& C = *cyl.algebra;
  const std::size_t top = cyl.block_start(n), qdim = C.dim() - top;
  auto q_of = [&](std::size_t b) { return difference(f, cyl.d0.image(b), cyl.d1.image(b)); };
  auto top_class = [&](const SparseVector& x) {
    SparseVector v;
    for (const auto& [i, c] : x.entries)
      if (i >= top) v.entries.emplace_back(i - top, c);
    return v;
  };
  auto lower_part_vanishes = [&](const SparseVector& x) {
    for (const auto& e : x.entries)
      if (e.first < top) return false;
    return true;
  };
  std::vector<SparseVector> cols(om.dim(n));
  bool in_top = true;
  for (std::size_t i = 0; i < om.dim(n); ++i) {
    const auto l = om.letters(n, i);
    SparseVector x = q_of(l[1]);
    for (std::size_t k = 2; k <= n; ++k) x = C.mul(x, q_of(l[k]));
    if (l[0] != 0) x = C.mul(cyl.d0.image(l[0] - 1), x);
    in_top = in_top && lower_part_vanishes(x);
    cols[i] = top_class(x);
  }
  r.map = SparseMatrix::from_columns(qdim, cols);
  r.source_dim = om.dim(n);
  r.target_dim = qdim;
  r.rank = rank(r.map, f);
  r.bijective = r.rank == r.source_dim && r.rank == r.target_dim;
  bool eq = in_top;
  for (std::size_t i = 0; i < om.dim(n) && eq; ++i) {
    const SparseVector w = SparseVector::unit(i);
    const SparseVector lifted = [&] {
      SparseVector v;
      for (const auto& [k, c] : cols[i].entries) v.entries.emplace_back(k + top, c);
      return v;
    }();
    for (std::size_t b = 0; b < a->dim() && eq; ++b) {
      const SparseVector e = SparseVector::unit(b);
      const SparseVector left_form = r.map.apply(f, om.left(e, n, w));
      const SparseVector right_form = r.map.apply(f, om.right(n, w, e));
      for (const AlgebraHom* inc : {&cyl.d0, &cyl.d1}) {
        eq = eq && top_class(C.mul(inc->image(b), lifted)) == left_form;
        eq = eq && top_class(C.mul(lifted, inc->image(b))) == right_form;
      }
    }
  }
  r.compatible = eq;
  return r;
}

/// The matrix sending a0 da1..da2l (even forms of degree < 2n) to
/// ρa0∘ω(a1,a2)∘…∘ω(a_{2l-1},a_{2l}) in U_n A, with ω(a,b) = ρa∘ρb − ρ(ab)
/// evaluated through the structure constants of U_n A.  Checks full rank and
/// that the projection to A agrees with taking the degree-0 component.
inline IsoReport even_forms_iso(const AlgebraPtr& a, std::size_t n) {
  IsoReport r;
  const Forms om(a);
  const Field& f = a->field();
  const UniversalModel u = universal_model_trunc(a, n);
  const Algebra& U = *u.algebra;
  auto rho = [&](std::size_t b) { return u.rho_linear.image(b); };
  auto curvature = [&](std::size_t x, std::size_t y) {
    VecBuilder acc(f);
    acc.add(U.mul(rho(x), rho(y)));
    for (const auto& [k, c] : a->product(x, y).entries) acc.add(rho(k), -c);
    return acc.take();
  };
  std::vector<SparseVector> cols;
  bool triangle = true;
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < om.dim(2 * l); ++i) {
      SparseVector x;
      if (l == 0) {
        x = rho(i);
      } else {
        const auto letters = om.letters(2 * l, i);
        x = curvature(letters[1], letters[2]);
        for (std::size_t k = 1; k < l; ++k) x = U.mul(x, curvature(letters[2 * k + 1], letters[2 * k + 2]));
        if (letters[0] != 0) x = U.mul(rho(letters[0] - 1), x);
      }
      const SparseVector proj = u.projection.apply(x);
      triangle = triangle && (l == 0 ? proj == SparseVector::unit(i) : proj.empty());
      cols.push_back(std::move(x));
    }
  }
  r.map = SparseMatrix::from_columns(U.dim(), cols);
  r.source_dim = cols.size();
  r.target_dim = U.dim();
  r.rank = rank(r.map, f);
  r.bijective = r.rank == r.source_dim && r.rank == r.target_dim;
  r.compatible = triangle;
  return r;
}

struct AlphaReport {
  std::size_t v_dim = 0, n = 0, N = 0;
  std::size_t source_dim = 0, target_dim = 0, rank = 0;
  bool multiplicative = false;
  bool bijective = false;
  bool qv_to_dv = false;
  bool d0x_to_x = false;
  std::optional<bool> filtration;  // set when an algebra structure on V is supplied
  std::vector<std::pair<std::size_t, std::size_t>> filtration_dims;  // (dim F''^k, dim G''^k), k = 1..n
  SparseMatrix map;

  bool passed() const {
    return multiplicative && bijective && qv_to_dv && d0x_to_x && filtration.value_or(true);
  }
};

/// α: Cyl_n(TV) -> Ω^{<n}(TV), both truncated at total weight <= N
/// (letters of V weigh 1, d does not change weight).  When `structure` is
/// given (an algebra on V), also checks α(<JA^k> + (qTA)^k) = <JA^k> + (Ω^+TA)^k
/// for k = 1..n, with JA the kernel of TA -> A.
inline AlphaReport example22_alpha(std::size_t v_dim, std::size_t n, std::size_t N, const Field& f,
                                   const AlgebraPtr& structure = nullptr) {
  if (structure && structure->dim() != v_dim) throw std::invalid_argument("structure algebra has the wrong dimension");
  AlphaReport rep;
  rep.v_dim = v_dim;
  rep.n = n;
  rep.N = N;
  const TensorAlgebra T = tensor_algebra_trunc(v_dim, N, f);
  const Cylinder cyl = q_construction(T.algebra, n, 0, static_cast<int>(N));
  const Forms om(T.algebra);
  const DeRhamAlgebra dr = de_rham_algebra(om, n - 1, static_cast<int>(N));
  const Algebra& C = *cyl.algebra;
  const Algebra& W = *dr.algebra;
  auto x_of = [&](std::size_t w) { return dr.embed(0, SparseVector::unit(w)); };
  auto dx_of = [&](std::size_t w) { return dr.embed(1, om.d(0, SparseVector::unit(w))); };
  auto phi1 = [&](std::size_t w) {
    const auto letters = T.words.decode(w);
    SparseVector acc = difference(f, x_of(letters[0]), dx_of(letters[0]));
    for (std::size_t k = 1; k < letters.size(); ++k) {
      const std::size_t v = T.words.encode({letters[k]});
      acc = W.mul(acc, difference(f, x_of(v), dx_of(v)));
    }
    return acc;
  };
  std::vector<SparseVector> qimg(T.algebra->dim());
  for (std::size_t w = 0; w < qimg.size(); ++w) qimg[w] = difference(f, x_of(w), phi1(w));
  std::vector<SparseVector> cols(C.dim());
  for (std::size_t idx = 0; idx < C.dim(); ++idx) {
    const std::size_t m = cyl.qcount[idx];
    const auto l = om.letters(m, cyl.wide[idx]);
    if (m == 0) {
      cols[idx] = x_of(l[0] - 1);
      continue;
    }
    SparseVector acc = qimg[l[1]];
    for (std::size_t k = 2; k <= m; ++k) acc = W.mul(acc, qimg[l[k]]);
    if (l[0] != 0) acc = W.mul(x_of(l[0] - 1), acc);
    cols[idx] = std::move(acc);
  }
  rep.map = SparseMatrix::from_columns(W.dim(), cols);
  rep.source_dim = C.dim();
  rep.target_dim = W.dim();
  rep.rank = rank(rep.map, f);
  rep.bijective = rep.rank == rep.source_dim && rep.rank == rep.target_dim;
  const AlgebraHom alpha(cyl.algebra, dr.algebra, rep.map);
  rep.multiplicative = alpha.multiplicative();
  rep.qv_to_dv = true;
  rep.d0x_to_x = true;
  for (std::size_t v = 0; v < v_dim; ++v) {
    const std::size_t word = T.words.encode({v});
    rep.qv_to_dv = rep.qv_to_dv && alpha.apply(difference(f, cyl.d0.image(word), cyl.d1.image(word))) == dx_of(word);
  }
  for (std::size_t w = 0; w < T.algebra->dim(); ++w) rep.d0x_to_x = rep.d0x_to_x && alpha.apply(cyl.d0.image(w)) == x_of(w);

  if (structure) {
    // JA inside T^{≤N}A: the ideal generated by the curvatures a⊗b − ab.
    std::vector<SparseVector> curv;
    for (std::size_t x = 0; x < v_dim; ++x)
      for (std::size_t y = 0; y < v_dim; ++y) {
        VecBuilder b(f);
        if (N >= 2) b.add(T.words.encode({x, y}), Scalar(1));
        for (const auto& [z, c] : structure->product(x, y).entries) b.add(T.words.encode({z}), -c);
        curv.push_back(b.take());
      }
    const IdealBasis JA = IdealBasis::generated(T.algebra, curv);
    bool ok = true;
    for (std::size_t k = 1; k <= n; ++k) {
      const IdealBasis Jk = ideal_power(JA, k);
      std::vector<SparseVector> fg, gg;
      for (const auto& j : Jk.sub.basis()) {
        fg.push_back(cyl.d0.apply(j));
        gg.push_back(dr.embed(0, j));
      }
      for (std::size_t i = 0; i < C.dim(); ++i)
        if (cyl.qcount[i] >= k) fg.push_back(SparseVector::unit(i));
      for (std::size_t i = 0; i < W.dim(); ++i)
        if (dr.form[i].first >= k) gg.push_back(SparseVector::unit(i));
      const Subspace F = ideal_closure(C, fg);
      const Subspace G = ideal_closure(W, gg);
      std::vector<SparseVector> image;
      for (const auto& v : F.basis()) image.push_back(alpha.apply(v));
      const Subspace aF = Subspace::span(f, W.dim(), image);
      rep.filtration_dims.emplace_back(F.dim(), G.dim());
      ok = ok && aF == G;
    }
    rep.filtration = ok;
  }
  return rep;
}

}  // namespace cqcalc
