#pragma once

// The tubular isomorphism B/I^n ≅ ⊕_{k<n} I^k/I^{k+1} for quasi-free B and
// B/I, and lifting of linear sections through the universal model U_n.

#include <optional>
#include <vector>

#include "cqcalc/complexes.hpp"
#include "cqcalc/forms_iso.hpp"
#include "cqcalc/mixed.hpp"
#include "cqcalc/spans.hpp"

namespace cqcalc {

/// ⊕_{k<n} I^k/I^{k+1}, graded by k, with the induced product.
struct AssociatedGraded {
  AlgebraPtr base;
  std::size_t n = 0;
  std::vector<Subspace> powers;        // I^0 = B, I^1, ..., I^n
  std::vector<HomologyBasis> layers;   // I^k modulo I^{k+1}, k < n
  std::vector<std::size_t> offset;     // first basis index of layer k
  AlgebraPtr algebra;

  /// Coordinates in G of the class of x ∈ I^k.
  SparseVector layer_coordinates(std::size_t k, const SparseVector& x) const {
    SparseVector out;
    for (const auto& [i, c] : layers[k].coordinates(x).entries) out.entries.emplace_back(offset[k] + i, c);
    return out;
  }
};

inline AssociatedGraded associated_graded(const IdealBasis& ideal, std::size_t n) {
  const AlgebraPtr& b = ideal.parent;
  const Field& f = b->field();
  AssociatedGraded g{b, n, {}, {}, {}, nullptr};
  g.powers.push_back(Subspace::full(f, b->dim()));
  for (std::size_t k = 1; k <= n; ++k) g.powers.push_back(ideal_power(ideal, k).sub);
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::size_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    HomologyBasis h{f, b->dim(), g.powers[k + 1], {}};
    Echelon e(f, b->dim());
    for (const auto& v : h.boundaries.basis()) e.insert(v);
    for (const auto& v : g.powers[k].basis())
      if (e.insert(v)) h.reps.push_back(v);
    g.offset.push_back(total);
    for (std::size_t r = 0; r < h.reps.size(); ++r) {
      labels.push_back("[" + std::to_string(k) + ":" + std::to_string(r) + "]");
      degrees.push_back(static_cast<int>(k));
    }
    total += h.reps.size();
    g.layers.push_back(std::move(h));
  }
  Algebra a(f, labels);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; j + k < n; ++k)
      for (std::size_t x = 0; x < g.layers[j].dim(); ++x)
        for (std::size_t y = 0; y < g.layers[k].dim(); ++y)
          a.set_product(g.offset[j] + x, g.offset[k] + y,
                        g.layer_coordinates(j + k, b->mul(g.layers[j].reps[x], g.layers[k].reps[y])));
  a.set_degrees(degrees);
  g.algebra = share(std::move(a));
  return g;
}

struct TubularReport {
  AssociatedGraded graded;
  SpanData span;               // u = B -> G^0, D_k: B -> I^k/I^{k+1}
  AlgebraHom iota;             // u + Σ D_k: B -> G
  bool multiplicative = false;
  bool surjective = false;
  bool kernel_is_power = false;  // ker ι = I^n
  bool projection_compatible = false;
  bool identity_on_layers = false;

  bool passed() const {
    return multiplicative && surjective && kernel_is_power && projection_compatible && identity_on_layers;
  }
};

/// An algebra section of B/I^2 -> B/I, given in B, defined on the layer-0 basis.
inline std::vector<SparseVector> section_mod_square(const AssociatedGraded& g) {
  const Algebra& B = *g.base;
  const Field& f = B.field();
  const auto& R0 = g.layers[0].reps;
  const std::size_t d0 = R0.size();
  if (g.n < 2 || g.layers[1].dim() == 0) return R0;
  const HomologyBasis& L1 = g.layers[1];
  const std::size_t d1 = L1.dim();
  const Algebra& A = *g.algebra;  // its degree-0 block is B/I in the layer-0 basis
  // σ = σ0 + τ with τ(e_x) = Σ_r c_{x,r} R1_r; solve in I/I² coordinates.
  std::vector<VecBuilder> cols(d0 * d1, VecBuilder(f));
  VecBuilder rhs(f);
  for (std::size_t x = 0; x < d0; ++x)
    for (std::size_t y = 0; y < d0; ++y) {
      const std::size_t row0 = (x * d0 + y) * d1;
      SparseVector ab;
      for (const auto& [z, c] : A.product(x, y).entries) ab.entries.emplace_back(z, c);
      VecBuilder curv(f);
      for (const auto& [z, c] : ab.entries) curv.add(R0[z], c);
      curv.add(B.mul(R0[x], R0[y]), Scalar(-1));
      rhs.add_shifted(L1.coordinates(curv.take()), row0, Scalar(-1));
      for (std::size_t r = 0; r < d1; ++r) {
        for (const auto& [z, c] : ab.entries) cols[z * d1 + r].add(row0 + r, c);
        cols[y * d1 + r].add_shifted(L1.coordinates(B.mul(R0[x], L1.reps[r])), row0, Scalar(-1));
        cols[x * d1 + r].add_shifted(L1.coordinates(B.mul(L1.reps[r], R0[y])), row0, Scalar(-1));
      }
    }
  std::vector<SparseVector> m;
  for (auto& c : cols) m.push_back(c.take());
  const auto sol = solve(SparseMatrix::from_columns(d0 * d0 * d1, std::move(m)), rhs.take(), f);
  if (!sol) throw NotQuasiFree("B/I -> B/I^2 has no multiplicative section");
  std::vector<SparseVector> sigma = R0;
  for (const auto& [i, c] : sol->entries) {
    VecBuilder acc(f);
    acc.add(sigma[i / d1]);
    acc.add(L1.reps[i % d1], c);
    sigma[i / d1] = acc.take();
  }
  return sigma;
}

inline TubularReport tubular_iso(const IdealBasis& ideal, std::size_t n) {
  if (n == 0) throw std::invalid_argument("stage must be positive");
  const AlgebraPtr& b = ideal.parent;
  const Field& f = b->field();
  const AlgebraPtr quot = quotient_algebra(b, ideal).first;
  const auto conn_b = find_connection(b);
  if (!conn_b) throw NotQuasiFree("the algebra has no connection");
  if (!find_connection(quot)) throw NotQuasiFree("the quotient has no connection");
  TubularReport r;
  r.graded = associated_graded(ideal, n);
  const AssociatedGraded& g = r.graded;
  const std::size_t gd = g.algebra->dim();
  std::vector<SparseVector> u(b->dim()), d1(b->dim());
  const auto sigma = section_mod_square(g);
  for (std::size_t i = 0; i < b->dim(); ++i) {
    const SparseVector e = SparseVector::unit(i);
    u[i] = g.layer_coordinates(0, e);
    if (n >= 2) {
      VecBuilder acc(f);
      acc.add(e);
      for (const auto& [z, c] : g.layers[0].coordinates(e).entries) acc.add(sigma[z], -c);
      d1[i] = g.layer_coordinates(1, acc.take());
    }
  }
  r.span.u = AlgebraHom(b, g.algebra, SparseMatrix::from_columns(gd, u));
  if (n >= 2) r.span.D.push_back(SparseMatrix::from_columns(gd, d1));
  for (std::size_t k = 2; k < n; ++k) {
    if (g.layers[k].dim() == 0) r.span.D.emplace_back(gd, b->dim());
    else r.span = extend_span(r.span, *conn_b);
  }
  SparseMatrix iota = r.span.u.matrix;
  for (const auto& D : r.span.D) iota = matrix_sum(f, iota, D);
  r.iota = AlgebraHom(b, g.algebra, iota);
  r.multiplicative = r.iota.multiplicative();
  r.surjective = rank(iota, f) == gd;
  r.kernel_is_power = kernel_basis(iota, f) == g.powers[n];
  r.projection_compatible = true;
  for (std::size_t i = 0; i < b->dim(); ++i) {
    SparseVector deg0;
    for (const auto& e : iota.column(i).entries)
      if (g.algebra->degree(e.first) == 0) deg0.entries.push_back(e);
    r.projection_compatible = r.projection_compatible && deg0 == g.layer_coordinates(0, SparseVector::unit(i));
  }
  r.identity_on_layers = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < g.layers[k].dim(); ++x) {
      SparseVector low_and_k;
      for (const auto& e : iota.apply(f, g.layers[k].reps[x]).entries)
        if (g.algebra->degree(e.first) <= static_cast<int>(k)) low_and_k.entries.push_back(e);
      r.identity_on_layers = r.identity_on_layers && low_and_k == SparseVector::unit(g.offset[k] + x);
    }
  return r;
}

struct LiftReport {
  UniversalModel source_model, target_model;  // U_n A, U_n B
  AlgebraHom Uf;                              // U_n A -> U_n B
  SparseMatrix t_hat;                         // U_n B -> U_n A
  bool Uf_multiplicative = false;
  bool is_section = false;                    // U_n f ∘ t̂ = id
  std::optional<bool> kernel_nilpotent;       // (ker U_n f)^{n²} = 0, when ker f is nilpotent

  bool passed() const { return Uf_multiplicative && is_section && kernel_nilpotent.value_or(true); }
};

namespace detail {
/// Inverse of an invertible square matrix, column by column.
inline SparseMatrix invert(const SparseMatrix& m, const Field& f) {
  std::vector<SparseVector> cols(m.rows());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    auto x = solve(m, SparseVector::unit(j), f);
    if (!x) throw std::invalid_argument("matrix is not invertible");
    cols[j] = std::move(*x);
  }
  return SparseMatrix::from_columns(m.cols(), std::move(cols));
}

/// Block-diagonal Ω^{2l}(f), l < n, on the even forms.
inline SparseMatrix even_forms_map(const AlgebraHom& h, std::size_t n) {
  const Forms src(h.source), dst(h.target);
  std::size_t rows = 0, cols = 0;
  for (std::size_t l = 0; l < n; ++l) {
    rows += dst.dim(2 * l);
    cols += src.dim(2 * l);
  }
  BlockMatrix m(h.field(), rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (std::size_t l = 0; l < n; ++l) {
    m.place(r0, c0, forms_map_matrix(src, dst, h, 2 * l));
    r0 += dst.dim(2 * l);
    c0 += src.dim(2 * l);
  }
  return m.take();
}
}  // namespace detail

/// t̂: U_n B -> U_n A sending ρb0∘ω(b1,b2)∘... to ρt(b0)∘Π(ρt(b)∘ρt(b') − ρt(bb')).
inline LiftReport lift_section(const AlgebraHom& f, const SparseMatrix& t, std::size_t n) {
  const Field& fl = f.field();
  const AlgebraPtr& A = f.source;
  const AlgebraPtr& B = f.target;
  if (!(f.matrix.compose(fl, t) == SparseMatrix::identity(B->dim()))) throw NotASection("f ∘ t is not the identity");
  LiftReport r{universal_model_trunc(A, n), universal_model_trunc(B, n), {}, {}, false, false, std::nullopt};
  const Algebra& UA = *r.source_model.algebra;
  const SparseMatrix phiA = even_forms_iso(A, n).map, phiB = even_forms_iso(B, n).map;
  const SparseMatrix ufm = phiB.compose(fl, detail::even_forms_map(f, n)).compose(fl, detail::invert(phiA, fl));
  r.Uf = AlgebraHom(r.source_model.algebra, r.target_model.algebra, ufm);
  r.Uf_multiplicative = r.Uf.multiplicative();
  auto rho_t = [&](const SparseVector& b) { return r.source_model.rho_linear.apply(t.apply(fl, b)); };
  auto curv = [&](std::size_t x, std::size_t y) {
    VecBuilder acc(fl);
    acc.add(UA.mul(rho_t(SparseVector::unit(x)), rho_t(SparseVector::unit(y))));
    acc.add(rho_t(B->product(x, y)), Scalar(-1));
    return acc.take();
  };
  const Forms omB(B);
  std::vector<SparseVector> cols;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < omB.dim(2 * l); ++i) {
      if (l == 0) {
        cols.push_back(rho_t(SparseVector::unit(i)));
        continue;
      }
      const auto let = omB.letters(2 * l, i);
      SparseVector x = curv(let[1], let[2]);
      for (std::size_t k = 1; k < l; ++k) x = UA.mul(x, curv(let[2 * k + 1], let[2 * k + 2]));
      if (let[0] != 0) x = UA.mul(rho_t(SparseVector::unit(let[0] - 1)), x);
      cols.push_back(std::move(x));
    }
  r.t_hat = SparseMatrix::from_columns(UA.dim(), cols).compose(fl, detail::invert(phiB, fl));
  r.is_section = ufm.compose(fl, r.t_hat) == SparseMatrix::identity(r.target_model.algebra->dim());
  const IdealBasis kf{A, kernel_basis(f.matrix, fl)};
  if (is_nilpotent(kf, A->dim() + 1)) {
    const IdealBasis kU{r.source_model.algebra, kernel_basis(ufm, fl)};
    r.kernel_nilpotent = ideal_power(kU, n * n).sub.dim() == 0;
  }
  return r;
}

}  // namespace cqcalc
