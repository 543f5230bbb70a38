#pragma once

// One-step nil-homotopy through the cylinder, and polynomial homotopy witnesses.

#include <optional>
#include <vector>

#include "cqcalc/cylinder.hpp"

namespace cqcalc {

struct NilWitness {
  std::size_t stage = 0;   // least n with Δ^n = 0
  Cylinder cylinder;       // Cyl_n(A)
  AlgebraHom map;          // Cyl_n(A) -> B with ∂0 ↦ f, q ↦ f − g
  bool d0_gives_f = false;
  bool d1_gives_g = false;
  bool multiplicative = false;

  bool verified() const { return d0_gives_f && d1_gives_g && multiplicative; }
};

/// Least n <= N with (f − g)(A)^n = 0 in B, with the induced map out of Cyl_n(A).
inline std::optional<NilWitness> nil_homotopic(const AlgebraHom& f, const AlgebraHom& g, std::size_t N) {
  if (f.source != g.source && !(*f.source == *g.source)) throw std::invalid_argument("maps have different sources");
  if (f.target != g.target && !(*f.target == *g.target)) throw std::invalid_argument("maps have different targets");
  const Field& fl = f.field();
  const Algebra& B = *f.target;
  const SparseMatrix diff = matrix_sum(fl, f.matrix, g.matrix, Scalar(-1));
  const Subspace delta = image(fl, diff);
  std::size_t stage = 0;
  Subspace p = delta;
  for (std::size_t n = 1; n <= N; ++n) {
    if (n > 1) p = subspace_product(B, p, delta);
    if (p.dim() == 0) {
      stage = n;
      break;
    }
  }
  if (stage == 0) return std::nullopt;
  NilWitness w;
  w.stage = stage;
  w.cylinder = q_construction(f.source, stage);
  const Cylinder& c = w.cylinder;
  const Forms om(f.source);
  std::vector<SparseVector> cols(c.algebra->dim());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const std::size_t m = c.qcount[i];
    const auto l = om.letters(m, c.wide[i]);
    if (m == 0) {
      cols[i] = f.image(l[0] - 1);
      continue;
    }
    SparseVector x = diff.column(l[1]);
    for (std::size_t k = 2; k <= m; ++k) x = B.mul(x, diff.column(l[k]));
    if (l[0] != 0) x = B.mul(f.image(l[0] - 1), x);
    cols[i] = std::move(x);
  }
  w.map = AlgebraHom(c.algebra, f.target, SparseMatrix::from_columns(B.dim(), cols));
  w.multiplicative = w.map.multiplicative();
  w.d0_gives_f = w.map.after(c.d0).matrix == f.matrix;
  w.d1_gives_g = w.map.after(c.d1).matrix == g.matrix;
  return w;
}

/// Checks f0 ≡ f1 ≡ ... ≡ fk pairwise; returns the stage for each step, or
/// nullopt at the first pair that is not one-step nil-homotopic within N.
inline std::vector<std::optional<std::size_t>> nil_chain(const std::vector<AlgebraHom>& maps, std::size_t N) {
  std::vector<std::optional<std::size_t>> out;
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    const auto w = nil_homotopic(maps[i], maps[i + 1], N);
    out.push_back(w ? std::optional<std::size_t>(w->stage) : std::nullopt);
  }
  return out;
}

/// B[t]/t^{T+1}: basis b_i t^j at index j * dim B + i.
struct PolyExtension {
  AlgebraPtr base;
  std::size_t T = 0;
  AlgebraPtr algebra;
  SparseMatrix eval0, eval1;  // ε0, ε1: B[t]/t^{T+1} -> B (linear)

  std::size_t index(std::size_t b, std::size_t j) const { return j * base->dim() + b; }
};

inline PolyExtension poly_extension(const AlgebraPtr& b, std::size_t T) {
  const std::size_t d = b->dim();
  PolyExtension p{b, T, nullptr, {}, {}};
  std::vector<std::string> labels;
  for (std::size_t j = 0; j <= T; ++j)
    for (std::size_t i = 0; i < d; ++i) labels.push_back(b->labels()[i] + (j ? "t^" + std::to_string(j) : ""));
  Algebra a(b->field(), labels);
  for (std::size_t j1 = 0; j1 <= T; ++j1)
    for (std::size_t j2 = 0; j1 + j2 <= T; ++j2)
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
          SparseVector v;
          for (const auto& [z, c] : b->product(x, y).entries) v.entries.emplace_back(p.index(z, j1 + j2), c);
          a.set_product(p.index(x, j1), p.index(y, j2), v);
        }
  if (b->unit()) a.set_unit(p.index(*b->unit(), 0));
  p.algebra = share(std::move(a));
  std::vector<SparseVector> e0(p.algebra->dim()), e1(p.algebra->dim());
  for (std::size_t j = 0; j <= T; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      if (j == 0) e0[p.index(i, j)] = SparseVector::unit(i);
      e1[p.index(i, j)] = SparseVector::unit(i);
    }
  p.eval0 = SparseMatrix::from_columns(d, e0);
  p.eval1 = SparseMatrix::from_columns(d, e1);
  return p;
}

/// h multiplicative, ε0∘h = f and ε1∘h = g.
inline bool poly_witness_check(const AlgebraHom& f, const AlgebraHom& g, const PolyExtension& p, const AlgebraHom& h) {
  const Field& fl = f.field();
  return h.multiplicative() && p.eval0.compose(fl, h.matrix) == f.matrix && p.eval1.compose(fl, h.matrix) == g.matrix;
}

/// h(b) = b t^{deg b} on a graded algebra: witnesses (inclusion ∘ projection to degree 0) ≃ id.
inline AlgebraHom degree_homotopy(const AlgebraPtr& b, const PolyExtension& p) {
  std::vector<SparseVector> cols(b->dim());
  for (std::size_t i = 0; i < b->dim(); ++i) {
    const std::size_t deg = static_cast<std::size_t>(b->degree(i));
    if (deg > p.T) throw TruncationTooSmall("t-truncation below the top degree");
    cols[i] = SparseVector::unit(p.index(i, deg));
  }
  return AlgebraHom(b, p.algebra, SparseMatrix::from_columns(p.algebra->dim(), cols));
}

}  // namespace cqcalc
