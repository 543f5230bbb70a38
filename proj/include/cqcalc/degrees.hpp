#pragma once

// Degree decomposition of X(P_A(V)) with deg a = 0, deg v = 1, compared with
// X(A * TV) in low degrees.

#include "cqcalc/mixed.hpp"
#include "cqcalc/report.hpp"
#include "cqcalc/spans.hpp"

namespace cqcalc {

/// X(A) for a graded A, with the degree of every even and odd basis vector.
/// The commutator subspace is homogeneous, so its quotient basis is too.
struct GradedX {
  SuperComplex complex;
  std::vector<int> even_deg, odd_deg;

  /// The degree-i summand; throws if a differential mixes degrees.
  SuperComplex part(int i) const {
    std::vector<std::size_t> ev, od;
    for (std::size_t k = 0; k < even_deg.size(); ++k)
      if (even_deg[k] == i) ev.push_back(k);
    for (std::size_t k = 0; k < odd_deg.size(); ++k)
      if (odd_deg[k] == i) od.push_back(k);
    auto restrict = [&](const SparseMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                        const std::vector<int>& row_deg) {
      std::vector<long> pos(m.rows(), -1);
      for (std::size_t r = 0; r < rows.size(); ++r) pos[rows[r]] = static_cast<long>(r);
      std::vector<SparseVector> out;
      for (std::size_t c : cols) {
        SparseVector v;
        for (const auto& [r, x] : m.column(c).entries) {
          if (row_deg[r] != i) throw ValidationError("differential does not preserve degree");
          v.entries.emplace_back(static_cast<std::size_t>(pos[r]), x);
        }
        out.push_back(std::move(v));
      }
      return SparseMatrix::from_columns(rows.size(), std::move(out));
    };
    return SuperComplex(complex.field, restrict(complex.d_eo, od, ev, odd_deg), restrict(complex.d_oe, ev, od, even_deg));
  }
};

inline GradedX graded_x(const AlgebraPtr& a, const std::vector<int>& degree) {
  const Forms om(a);
  GradedX g{x_complex(a), degree, {}};
  for (std::size_t r : om.natural_quotient(1).representatives) {
    const auto l = om.letters(1, r);
    g.odd_deg.push_back((l[0] == 0 ? 0 : degree[l[0] - 1]) + degree[l[1]]);
  }
  return g;
}

inline std::vector<int> algebra_degrees(const Algebra& a) {
  std::vector<int> d;
  for (std::size_t i = 0; i < a.dim(); ++i) d.push_back(a.degree(i));
  return d;
}

/// (A * T^{<=n}V) cut at word length 2n + 1: equal to A * TV in degrees <= n.
inline std::pair<AlgebraPtr, std::vector<int>> free_product_low_degrees(const AlgebraPtr& a, std::size_t v_dim, std::size_t n) {
  const TensorAlgebra t = tensor_algebra_trunc(v_dim, n, a->field());
  const FreeProduct fp = free_product_trunc(a, t.algebra, 2 * n + 1);
  std::vector<int> deg;
  for (const auto& w : fp.words) {
    int d = 0;
    for (std::size_t k = 0; k < w.letters.size(); ++k)
      if (w.factor(k) == 1) d += t.algebra->degree(w.letters[k]);
    deg.push_back(d);
  }
  return {fp.algebra, deg};
}

inline VerificationReport lemma66_decompose(const AlgebraPtr& a, std::size_t v_dim, std::size_t n) {
  if (n < 1) throw TruncationTooSmall("lemma66_decompose needs n >= 1");
  if (!find_connection(a)) throw NotQuasiFree("the base algebra has no connection");
  const Field& f = a->field();
  VerificationReport r;
  r.lemma = "lemma66";
  r.input("field", f.name());
  r.input("a_dim", a->dim());
  r.input("v_dim", v_dim);
  r.input("n", n);

  const PowerAlgebra p = power_algebra_trunc(a, v_dim, n + 1);
  const GradedX xp = graded_x(p.algebra, algebra_degrees(*p.algebra));
  std::vector<std::size_t> dims_p, dims_free, homology_p, homology_free;
  std::size_t mismatch = 0;
  if (v_dim > 0) {
    const auto [fa, fdeg] = free_product_low_degrees(a, v_dim, n);
    const GradedX xf = graded_x(fa, fdeg);
    for (int i = 0; i <= static_cast<int>(n); ++i) {
      const SuperComplex cp = xp.part(i), cf = xf.part(i);
      const auto hp = homology_super(cp), hf = homology_super(cf);
      dims_p.insert(dims_p.end(), {cp.even_dim, cp.odd_dim});
      dims_free.insert(dims_free.end(), {cf.even_dim, cf.odd_dim});
      homology_p.insert(homology_p.end(), {hp.first, hp.second});
      homology_free.insert(homology_free.end(), {hf.first, hf.second});
    }
  } else {
    const auto hx = homology_super(x_complex(a)), hp = homology_super(xp.complex);
    const SuperComplex xa = x_complex(a);
    dims_p = {xp.complex.even_dim, xp.complex.odd_dim};
    dims_free = {xa.even_dim, xa.odd_dim};
    homology_p = {hp.first, hp.second};
    homology_free = {hx.first, hx.second};
  }
  for (std::size_t k = 0; k < dims_p.size(); ++k)
    mismatch += detail::abs_diff(dims_p[k], dims_free[k]) + detail::abs_diff(homology_p[k], homology_free[k]);
  r.tables["low_degree_dims_power"] = dims_p;
  r.tables["low_degree_dims_free"] = dims_free;
  r.tables["low_degree_homology_power"] = homology_p;
  r.tables["low_degree_homology_free"] = homology_free;
  r.check("low_degrees_match_free_product", mismatch);

  // Discarded part: degrees n+1..2n of stage n+1, hit from stage 2n+1.
  std::size_t discarded = 0, tau_nonzero = 0;
  for (int d : xp.even_deg) discarded += d > static_cast<int>(n);
  for (int d : xp.odd_deg) discarded += d > static_cast<int>(n);
  if (discarded > 0) {
    const PowerAlgebra big = power_algebra_trunc(a, v_dim, 2 * n + 1);
    std::vector<SparseVector> cols(big.algebra->dim());
    for (std::size_t i = 0; i < p.algebra->dim(); ++i) cols[i] = SparseVector::unit(i);
    const AlgebraHom tau(big.algebra, p.algebra, SparseMatrix::from_columns(p.algebra->dim(), std::move(cols)));
    const MixedChainMap m = theta_mixed_map(tau, 1);
    const GradedX xb = graded_x(big.algebra, algebra_degrees(*big.algebra));
    auto count = [&](const SparseMatrix& mat, const std::vector<int>& src_deg, const std::vector<int>& dst_deg) {
      for (std::size_t c = 0; c < mat.cols(); ++c) {
        if (src_deg[c] <= static_cast<int>(2 * n)) continue;
        for (const auto& [row, x] : mat.column(c).entries)
          if (dst_deg[row] > static_cast<int>(n)) ++tau_nonzero;
      }
    };
    count(m.f[0], xb.even_deg, xp.even_deg);
    count(m.f[1], xb.odd_deg, xp.odd_deg);
  }
  r.tables["discarded_dim"] = {discarded};
  r.check("discarded_structure_maps_zero", tau_nonzero);
  return r;
}

}  // namespace cqcalc
