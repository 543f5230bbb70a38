#pragma once

// Z/2-graded complexes: the X-complex, the θΩ stages, chain maps, cones and
// exact homology.

#include <string>
#include <tuple>
#include <vector>

#include "cqcalc/errors.hpp"
#include "cqcalc/forms.hpp"

namespace cqcalc {

/// Assembles a sparse matrix from placed blocks.
class BlockMatrix {
 public:
  BlockMatrix(const Field& f, std::size_t rows, std::size_t cols) : f_(f), rows_(rows), cols_(cols), acc_(cols) {}

  void place(std::size_t row0, std::size_t col0, const SparseMatrix& m, const Scalar& c = Scalar(1)) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [i, x] : m.column(j).entries) acc_[col0 + j].emplace_back(row0 + i, c * x);
  }

  SparseMatrix take() const {
    std::vector<SparseVector> cols(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      VecBuilder b(f_);
      for (const auto& [i, x] : acc_[j]) b.add(i, x);
      cols[j] = b.take();
    }
    return SparseMatrix::from_columns(rows_, std::move(cols));
  }

 private:
  Field f_;
  std::size_t rows_, cols_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> acc_;
};

/// Homology at a spot C_in -> C -> C_out: cycle representatives of a basis
/// of ker/im, and coordinates of any cycle in that basis.
struct HomologyBasis {
  Field field;
  std::size_t ambient = 0;
  Subspace boundaries;
  std::vector<SparseVector> reps;

  std::size_t dim() const { return reps.size(); }

  SparseVector coordinates(const SparseVector& cycle) const {
    std::vector<SparseVector> cols = boundaries.basis();
    const std::size_t nb = cols.size();
    cols.insert(cols.end(), reps.begin(), reps.end());
    const auto x = solve(SparseMatrix::from_columns(ambient, cols), cycle, field);
    if (!x) throw std::invalid_argument("vector is not a cycle");
    SparseVector out;
    for (const auto& [i, c] : x->entries)
      if (i >= nb) out.entries.emplace_back(i - nb, c);
    return out;
  }
};

/// `in`: C_in -> C, `out`: C -> C_out.
inline HomologyBasis homology_basis(const Field& f, const SparseMatrix& in, const SparseMatrix& out) {
  HomologyBasis h{f, out.cols(), image(f, in), {}};
  Echelon e(f, h.ambient);
  for (const auto& v : h.boundaries.basis()) e.insert(v);
  const Subspace cycles = kernel_basis(out, f);
  for (const auto& z : cycles.basis())
    if (e.insert(z)) h.reps.push_back(z);
  return h;
}

struct SuperComplex {
  Field field;
  std::size_t even_dim = 0, odd_dim = 0;
  SparseMatrix d_eo;  // odd_dim x even_dim
  SparseMatrix d_oe;  // even_dim x odd_dim
  std::vector<std::string> even_labels, odd_labels;

  SuperComplex() = default;
  SuperComplex(const Field& f, SparseMatrix eo, SparseMatrix oe)
      : field(f), even_dim(eo.cols()), odd_dim(eo.rows()), d_eo(std::move(eo)), d_oe(std::move(oe)) {
    validate();
  }

  void validate() const {
    if (d_oe.rows() != even_dim || d_oe.cols() != odd_dim || d_eo.rows() != odd_dim || d_eo.cols() != even_dim)
      throw ValidationError("supercomplex differentials have inconsistent shapes");
    if (!d_oe.compose(field, d_eo).is_zero()) throw ValidationError("odd-to-even after even-to-odd is nonzero");
    if (!d_eo.compose(field, d_oe).is_zero()) throw ValidationError("even-to-odd after odd-to-even is nonzero");
  }

  HomologyBasis homology_even() const { return homology_basis(field, d_oe, d_eo); }
  HomologyBasis homology_odd() const { return homology_basis(field, d_eo, d_oe); }
};

inline std::pair<std::size_t, std::size_t> homology_super(const SuperComplex& c) {
  const std::size_t r_eo = rank(c.d_eo, c.field), r_oe = rank(c.d_oe, c.field);
  return {c.even_dim - r_eo - r_oe, c.odd_dim - r_oe - r_eo};
}

/// θΩ at stage n for a constant tower: (⊕_{r<n} Ω^r A) ⊕ Ω^n_♮ A with B + b,
/// where B out of degree n-1 is followed by ♮ and b on the top summand is the
/// map induced on the ♮ quotient.  Parity is form degree mod 2.
inline SuperComplex theta_omega_stage(const AlgebraPtr& a, std::size_t n) {
  if (n == 0) throw std::invalid_argument("theta stage needs n >= 1");
  const Forms om(a);
  const Field& f = om.field();
  const Quotient nat = om.natural_quotient(n);
  std::vector<std::size_t> dims(n + 1), offset(n + 1);
  std::size_t even = 0, odd = 0;
  for (std::size_t r = 0; r <= n; ++r) {
    dims[r] = r < n ? om.dim(r) : nat.dim();
    std::size_t& tot = (r % 2 == 0) ? even : odd;
    offset[r] = tot;
    tot += dims[r];
  }
  BlockMatrix eo(f, odd, even), oe(f, even, odd);
  auto place = [&](std::size_t from, std::size_t to, const SparseMatrix& m) {
    (from % 2 == 0 ? eo : oe).place(offset[to], offset[from], m);
  };
  for (std::size_t r = 0; r < n; ++r) {
    if (r + 1 < n) place(r, r + 1, om.B_matrix(r));
    else place(r, n, nat.projection.compose(f, om.B_matrix(r)));
    if (r >= 1) place(r, r - 1, om.b_matrix(r));
  }
  std::vector<SparseVector> top(nat.dim());
  for (std::size_t q = 0; q < nat.dim(); ++q) top[q] = om.b(n, nat.lift(q));
  place(n, n - 1, SparseMatrix::from_columns(om.dim(n - 1), top));
  SuperComplex c(f, eo.take(), oe.take());
  c.even_labels.resize(even);
  c.odd_labels.resize(odd);
  for (std::size_t r = 0; r <= n; ++r)
    for (std::size_t i = 0; i < dims[r]; ++i) {
      const std::size_t amb = r < n ? i : nat.representatives[i];
      std::string l = om.label(r, amb);
      if (r == n) l = "#" + l;
      (r % 2 == 0 ? c.even_labels : c.odd_labels)[offset[r] + i] = l;
    }
  return c;
}

/// X(A): A ⇄ Ω^1_♮ A with ♮d and the induced b.  Checks that b vanishes on
/// the commutator subspace, so the odd-to-even map is well defined.
inline SuperComplex x_complex(const AlgebraPtr& a) {
  const Forms om(a);
  const Field& f = om.field();
  const Quotient nat = om.natural_quotient(1);
  const Subspace comm = om.commutators(1);
  for (const auto& v : comm.basis())
    if (!om.b(1, v).empty()) throw ValidationError("b does not vanish on commutators");
  std::vector<SparseVector> back(nat.dim());
  for (std::size_t q = 0; q < nat.dim(); ++q) back[q] = om.b(1, nat.lift(q));
  return SuperComplex(f, nat.projection.compose(f, om.d_matrix(0)), SparseMatrix::from_columns(om.dim(0), back));
}

struct SuperChainMap {
  SuperComplex source, target;
  SparseMatrix even, odd;  // target.even x source.even, target.odd x source.odd

  void validate() const {
    const Field& f = source.field;
    if (!(target.d_eo.compose(f, even) == odd.compose(f, source.d_eo)) ||
        !(target.d_oe.compose(f, odd) == even.compose(f, source.d_oe)))
      throw ValidationError("map does not commute with the differentials");
  }

  /// Matrices of the induced maps on (H_even, H_odd) in the homology bases.
  std::pair<SparseMatrix, SparseMatrix> on_homology() const {
    const Field& f = source.field;
    auto induced = [&](const HomologyBasis& s, const HomologyBasis& t, const SparseMatrix& m) {
      std::vector<SparseVector> cols;
      for (const auto& z : s.reps) cols.push_back(t.coordinates(m.apply(f, z)));
      return SparseMatrix::from_columns(t.dim(), cols);
    };
    return {induced(source.homology_even(), target.homology_even(), even),
            induced(source.homology_odd(), target.homology_odd(), odd)};
  }
};

/// cone_even = S_odd ⊕ T_even, cone_odd = S_even ⊕ T_odd, d(s, t) = (-ds, fs + dt).
inline SuperComplex mapping_cone(const SuperChainMap& m) {
  m.validate();
  const SuperComplex& s = m.source;
  const SuperComplex& t = m.target;
  const Field& f = s.field;
  const std::size_t ce = s.odd_dim + t.even_dim, co = s.even_dim + t.odd_dim;
  BlockMatrix eo(f, co, ce), oe(f, ce, co);
  eo.place(0, 0, s.d_oe, Scalar(-1));
  eo.place(s.even_dim, 0, m.odd);
  eo.place(s.even_dim, s.odd_dim, t.d_eo);
  oe.place(0, 0, s.d_eo, Scalar(-1));
  oe.place(s.odd_dim, 0, m.even);
  oe.place(s.odd_dim, s.even_dim, t.d_oe);
  return SuperComplex(f, eo.take(), oe.take());
}

}  // namespace cqcalc
