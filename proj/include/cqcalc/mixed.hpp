#pragma once

// Bounded mixed complexes (M_0..M_N, b, B), negative cyclic homology,
// cones, and limits of towers of finite-dimensional vector spaces.

#include <vector>

#include "cqcalc/complexes.hpp"

namespace cqcalc {

/// Ω^n(f): ã0 da1..dan ↦ f̃(a0) df(a1)..df(an), as a matrix Ω^n A -> Ω^n B.
inline SparseMatrix forms_map_matrix(const Forms& src, const Forms& dst, const AlgebraHom& f, std::size_t n) {
  std::vector<SparseVector> cols(src.dim(n));
  for (std::size_t i = 0; i < src.dim(n); ++i) {
    const auto l = src.letters(n, i);
    if (n == 0) {
      cols[i] = f.image(l[0]);
      continue;
    }
    SparseVector w = dst.d(0, f.image(l[1]));
    for (std::size_t k = 2; k <= n; ++k) w = dst.mul(k - 1, w, 1, dst.d(0, f.image(l[k])));
    if (l[0] != 0) w = dst.mul(0, f.image(l[0] - 1), n, w);
    cols[i] = std::move(w);
  }
  return SparseMatrix::from_columns(dst.dim(n), std::move(cols));
}

struct MixedComplex {
  Field field;
  std::vector<std::size_t> dims;  // M_0..M_N
  std::vector<SparseMatrix> b;    // b[k]: M_k -> M_{k-1} (b[0] is 0 x dims[0])
  std::vector<SparseMatrix> B;    // B[k]: M_k -> M_{k+1} (B[N] is 0 x dims[N])

  std::size_t top() const { return dims.size() - 1; }

  void validate() const {
    const std::size_t N = top();
    for (std::size_t k = 0; k <= N; ++k) {
      if (b[k].cols() != dims[k] || b[k].rows() != (k ? dims[k - 1] : 0) || B[k].cols() != dims[k] ||
          B[k].rows() != (k < N ? dims[k + 1] : 0))
        throw ValidationError("mixed complex maps have inconsistent shapes");
      if (k >= 2 && !b[k - 1].compose(field, b[k]).is_zero()) throw ValidationError("b^2 != 0");
      if (k + 2 <= N && !B[k + 1].compose(field, B[k]).is_zero()) throw ValidationError("B^2 != 0");
      if (k >= 1 && k + 1 <= N) {
        const SparseMatrix c = matrix_sum(field, b[k + 1].compose(field, B[k]), B[k - 1].compose(field, b[k]));
        if (!c.is_zero()) throw ValidationError("bB + Bb != 0");
      } else if (k == 0 && N >= 1 && !b[1].compose(field, B[0]).is_zero()) {
        throw ValidationError("bB != 0 in degree 0");
      } else if (k == N && N >= 1 && !B[N - 1].compose(field, b[N]).is_zero()) {
        throw ValidationError("Bb != 0 in the top degree");
      }
    }
  }
};

/// M_r = Ω^r A for r < n, M_n = Ω^n_♮ A; B into the top is followed by ♮,
/// b out of the top is induced.
inline MixedComplex theta_mixed(const AlgebraPtr& a, std::size_t n) {
  const Forms om(a);
  const Field& f = om.field();
  const Quotient nat = om.natural_quotient(n);
  MixedComplex m{f, {}, {}, {}};
  for (std::size_t r = 0; r <= n; ++r) m.dims.push_back(r < n ? om.dim(r) : nat.dim());
  for (std::size_t r = 0; r <= n; ++r) {
    if (r == 0) m.b.emplace_back(0, m.dims[0]);
    else if (r < n) m.b.push_back(om.b_matrix(r));
    else {
      std::vector<SparseVector> top(nat.dim());
      for (std::size_t q = 0; q < nat.dim(); ++q) top[q] = om.b(n, nat.lift(q));
      m.b.push_back(SparseMatrix::from_columns(m.dims[n - 1], top));
    }
    if (r + 1 < n) m.B.push_back(om.B_matrix(r));
    else if (r + 1 == n) m.B.push_back(nat.projection.compose(f, om.B_matrix(r)));
    else m.B.emplace_back(0, m.dims[n]);
  }
  m.validate();
  return m;
}

inline MixedComplex x_mixed(const AlgebraPtr& a) { return theta_mixed(a, 1); }

/// The Z/2-graded total object with differential b + B.
inline SuperComplex total_super(const MixedComplex& m) {
  std::vector<std::size_t> offset(m.dims.size());
  std::size_t even = 0, odd = 0;
  for (std::size_t k = 0; k < m.dims.size(); ++k) {
    std::size_t& t = k % 2 == 0 ? even : odd;
    offset[k] = t;
    t += m.dims[k];
  }
  BlockMatrix eo(m.field, odd, even), oe(m.field, even, odd);
  for (std::size_t k = 0; k < m.dims.size(); ++k) {
    BlockMatrix& out = k % 2 == 0 ? eo : oe;
    if (k >= 1) out.place(offset[k - 1], offset[k], m.b[k]);
    if (k < m.top()) out.place(offset[k + 1], offset[k], m.B[k]);
  }
  return SuperComplex(m.field, eo.take(), oe.take());
}

struct MixedChainMap {
  MixedComplex source, target;
  std::vector<SparseMatrix> f;  // f[k]: source M_k -> target M_k

  void validate() const {
    const Field& fl = source.field;
    if (source.dims.size() != target.dims.size() || f.size() != source.dims.size())
      throw ValidationError("mixed chain map between complexes of different lengths");
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (k >= 1 && !(target.b[k].compose(fl, f[k]) == f[k - 1].compose(fl, source.b[k])))
        throw ValidationError("map does not commute with b");
      if (k < source.top() && !(target.B[k].compose(fl, f[k]) == f[k + 1].compose(fl, source.B[k])))
        throw ValidationError("map does not commute with B");
    }
  }
};

/// θ-stage map induced by an algebra homomorphism (needs ♮-compatibility,
/// which holds for any homomorphism).
inline MixedChainMap theta_mixed_map(const AlgebraHom& h, std::size_t n) {
  const Forms src(h.source), dst(h.target);
  MixedChainMap m{theta_mixed(h.source, n), theta_mixed(h.target, n), {}};
  const Field& f = h.field();
  for (std::size_t r = 0; r < n; ++r) m.f.push_back(forms_map_matrix(src, dst, h, r));
  const Quotient qs = src.natural_quotient(n), qt = dst.natural_quotient(n);
  const SparseMatrix full = forms_map_matrix(src, dst, h, n);
  std::vector<SparseVector> top(qs.dim());
  for (std::size_t q = 0; q < qs.dim(); ++q) top[q] = qt.project(f, full.apply(f, qs.lift(q)));
  m.f.push_back(SparseMatrix::from_columns(qt.dim(), top));
  m.validate();
  return m;
}

/// cone_k = S_{k-1} ⊕ T_k, b(s, t) = (-bs, fs + bt), B(s, t) = (-Bs, Bt).
inline MixedComplex mixed_cone(const MixedChainMap& m) {
  m.validate();
  const MixedComplex& s = m.source;
  const MixedComplex& t = m.target;
  const Field& f = s.field;
  const std::size_t N = s.top() + 1;
  auto sdim = [&](std::size_t k) -> std::size_t { return k >= 1 && k - 1 <= s.top() ? s.dims[k - 1] : 0; };
  auto tdim = [&](std::size_t k) -> std::size_t { return k <= t.top() ? t.dims[k] : 0; };
  MixedComplex c{f, {}, {}, {}};
  for (std::size_t k = 0; k <= N; ++k) c.dims.push_back(sdim(k) + tdim(k));
  for (std::size_t k = 0; k <= N; ++k) {
    BlockMatrix bm(f, k ? c.dims[k - 1] : 0, c.dims[k]);
    if (k >= 2) bm.place(0, 0, s.b[k - 1], Scalar(-1));
    if (k >= 1 && k - 1 <= s.top() && tdim(k - 1)) bm.place(sdim(k - 1), 0, m.f[k - 1]);
    if (k >= 1 && k <= t.top()) bm.place(sdim(k - 1), sdim(k), t.b[k]);
    c.b.push_back(bm.take());
    BlockMatrix Bm(f, k < N ? c.dims[k + 1] : 0, c.dims[k]);
    if (k >= 1 && k < N) Bm.place(0, 0, s.B[k - 1], Scalar(-1));
    if (k + 1 <= t.top()) Bm.place(sdim(k + 1), sdim(k), t.B[k]);
    c.B.push_back(Bm.take());
  }
  c.validate();
  return c;
}

/// Map of cones induced by a commuting square: on cone_k = S_{k-1} ⊕ T_k it is
/// on_source ⊕ on_target.  The square is checked through validate().
inline MixedChainMap cone_morphism(const MixedChainMap& upper, const MixedChainMap& lower,
                                   const MixedChainMap& on_source, const MixedChainMap& on_target) {
  const Field& fl = upper.source.field;
  for (std::size_t k = 0; k < upper.f.size(); ++k)
    if (!(lower.f[k].compose(fl, on_source.f[k]) == on_target.f[k].compose(fl, upper.f[k])))
      throw ValidationError("square of mixed chain maps does not commute");
  MixedChainMap m{mixed_cone(upper), mixed_cone(lower), {}};
  for (std::size_t k = 0; k < m.source.dims.size(); ++k) {
    BlockMatrix bm(fl, m.target.dims[k], m.source.dims[k]);
    std::size_t rs = 0, cs = 0;
    if (k >= 1) {
      bm.place(0, 0, on_source.f[k - 1]);
      rs = lower.source.dims[k - 1];
      cs = upper.source.dims[k - 1];
    }
    if (k <= upper.target.top()) bm.place(rs, cs, on_target.f[k]);
    m.f.push_back(bm.take());
  }
  m.validate();
  return m;
}

/// The induced map of total super complexes.
inline SuperChainMap total_super_map(const MixedChainMap& m) {
  const Field& fl = m.source.field;
  auto parity_block = [&](std::size_t parity) {
    std::size_t rows = 0, cols = 0;
    for (std::size_t k = parity; k < m.f.size(); k += 2) {
      rows += m.target.dims[k];
      cols += m.source.dims[k];
    }
    BlockMatrix bm(fl, rows, cols);
    std::size_t r = 0, c = 0;
    for (std::size_t k = parity; k < m.f.size(); k += 2) {
      bm.place(r, c, m.f[k]);
      r += m.target.dims[k];
      c += m.source.dims[k];
    }
    return bm.take();
  };
  SuperChainMap s{total_super(m.source), total_super(m.target), parity_block(0), parity_block(1)};
  s.validate();
  return s;
}

/// Negative cyclic chains CN_n = ⊕_{j>=0} M_{n+2j} (only k >= 0 present),
/// with d(m u^j) = bm u^j + Bm u^{j+1}.  Returns the matrix CN_n -> CN_{n-1}.
inline SparseMatrix cn_differential(const MixedComplex& m, long n) {
  auto comps = [&](long deg) {
    std::vector<std::size_t> ks;
    for (long k = deg; k <= static_cast<long>(m.top()); k += 2)
      if (k >= 0) ks.push_back(static_cast<std::size_t>(k));
    return ks;
  };
  const auto src = comps(n), dst = comps(n - 1);
  auto offsets = [&](const std::vector<std::size_t>& ks) {
    std::vector<std::size_t> off;
    std::size_t t = 0;
    for (std::size_t k : ks) {
      off.push_back(t);
      t += m.dims[k];
    }
    off.push_back(t);
    return off;
  };
  const auto so = offsets(src), dso = offsets(dst);
  auto where = [&](std::size_t k) -> long {
    for (std::size_t i = 0; i < dst.size(); ++i)
      if (dst[i] == k) return static_cast<long>(dso[i]);
    return -1;
  };
  BlockMatrix out(m.field, dso.back(), so.back());
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::size_t k = src[i];
    if (k >= 1)
      if (long w = where(k - 1); w >= 0) out.place(static_cast<std::size_t>(w), so[i], m.b[k]);
    if (k < m.top())
      if (long w = where(k + 1); w >= 0) out.place(static_cast<std::size_t>(w), so[i], m.B[k]);
  }
  return out.take();
}

inline std::size_t hn_of_mixed(const MixedComplex& m, long n) {
  const SparseMatrix out = cn_differential(m, n), in = cn_differential(m, n + 1);
  return out.cols() - rank(out, m.field) - rank(in, m.field);
}

/// HN_n of the fiber of f: H_{n+1} of the cone.
inline std::size_t relative_hn(const MixedChainMap& f, long n) { return hn_of_mixed(mixed_cone(f), n + 1); }

/// The map HN_n(S) -> HN_n(T) in homology bases.
inline SparseMatrix hn_map(const MixedChainMap& f, long n) {
  const Field& fl = f.source.field;
  const HomologyBasis hs = homology_basis(fl, cn_differential(f.source, n + 1), cn_differential(f.source, n));
  const HomologyBasis ht = homology_basis(fl, cn_differential(f.target, n + 1), cn_differential(f.target, n));
  // CN_n is a direct sum of M_k with k = n, n+2, ...; f acts blockwise.
  auto block_apply = [&](const SparseVector& x) {
    VecBuilder acc(fl);
    std::size_t so = 0, to = 0;
    for (long k = n; k <= static_cast<long>(f.source.top()); k += 2) {
      if (k < 0) continue;
      const auto kk = static_cast<std::size_t>(k);
      SparseVector part;
      for (const auto& [i, c] : x.entries)
        if (i >= so && i < so + f.source.dims[kk]) part.entries.emplace_back(i - so, c);
      acc.add_shifted(f.f[kk].apply(fl, part), to);
      so += f.source.dims[kk];
      to += f.target.dims[kk];
    }
    return acc.take();
  };
  std::vector<SparseVector> cols;
  for (const auto& z : hs.reps) cols.push_back(ht.coordinates(block_apply(z)));
  return SparseMatrix::from_columns(ht.dim(), cols);
}

struct TowerLimits {
  std::vector<std::size_t> lim_dims;  // dim Im(V_N -> V_n), n = 1..N
  std::vector<bool> stabilized;       // images already stable before reaching V_N
  std::vector<bool> surjective;       // σ_n: V_{n+1} -> V_n onto
  std::size_t lim1_dim = 0;           // always 0: descending chains of finite-dimensional images stabilize
};

/// dims[i] = dim V_{i+1}; maps[i]: V_{i+2} -> V_{i+1}.
inline TowerLimits tower_limits(const Field& f, const std::vector<std::size_t>& dims, const std::vector<SparseMatrix>& maps) {
  const std::size_t N = dims.size();
  if (maps.size() + 1 != N && !(N == 0 && maps.empty())) throw std::invalid_argument("tower needs one map per consecutive pair");
  TowerLimits t;
  for (std::size_t i = 0; i + 1 < N; ++i) t.surjective.push_back(rank(maps[i], f) == dims[i]);
  for (std::size_t n = 0; n < N; ++n) {
    std::vector<std::size_t> image_dims;
    SparseMatrix comp = SparseMatrix::identity(dims[n]);
    image_dims.push_back(dims[n]);
    for (std::size_t m = n; m + 1 < N; ++m) {
      comp = comp.compose(f, maps[m]);
      image_dims.push_back(rank(comp, f));
    }
    t.lim_dims.push_back(image_dims.back());
    t.stabilized.push_back(image_dims.size() < 2 || image_dims[image_dims.size() - 2] == image_dims.back());
  }
  return t;
}

}  // namespace cqcalc
