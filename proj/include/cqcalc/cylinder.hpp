#pragma once

// Finite stages of the cylinder QA/qA^n and of the universal model TA/JA^n,
// both realized on normal forms:
//
//   Cyl_n(A): ã0 qa1 ... qam with m < n, product from qa·b = q(ab) - a qb + qa qb;
//   U_n(A):   even forms ã0 da1 ... da_{2i} with i < n, product x∘y = xy + dx dy.
//
// Each construction certifies itself: the images of words of length <= L in
// the generators span the normal-form space, and the structure maps from A are
// multiplicative.  Failure raises TruncationTooSmall.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqcalc/forms.hpp"

namespace cqcalc {

namespace detail {

/// Span of all products of at most L elements from `gens` (left-to-right),
/// computed by iterated right multiplication.
inline std::size_t word_span_dim(const Algebra& alg, const std::vector<SparseVector>& gens, std::size_t L) {
  Echelon e(alg.field(), alg.dim());
  std::vector<SparseVector> frontier;
  for (const auto& g : gens)
    if (e.insert(g)) frontier.push_back(g);
  for (std::size_t len = 2; len <= L && !frontier.empty(); ++len) {
    std::vector<SparseVector> next;
    for (const auto& s : frontier)
      for (const auto& g : gens) {
        SparseVector p = alg.mul(s, g);
        if (e.insert(p)) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return e.rank();
}

}  // namespace detail

struct Cylinder {
  AlgebraPtr base;
  std::size_t n = 0;
  std::size_t L = 0;
  int weight_cap = -1;                        // -1: no cap
  std::vector<std::size_t> qcount;            // number of q's of each basis element
  std::vector<std::size_t> wide;              // its index in W_m (slot >= 1 when m = 0)
  std::vector<std::vector<long>> compact;     // compact[m][wide index] = basis index or -1
  AlgebraPtr algebra;
  AlgebraHom d0, d1;  // the two inclusions A -> Cyl
  AlgebraHom fold;    // Cyl -> A

  std::size_t q_count(std::size_t idx) const { return qcount.at(idx); }

  std::optional<std::size_t> find(std::size_t m, std::size_t w) const {
    if (m >= compact.size() || w >= compact[m].size() || compact[m][w] < 0) return std::nullopt;
    return static_cast<std::size_t>(compact[m][w]);
  }

  /// Index of ã0 qa1..qam (lead nullopt = formal unit, m >= 1).
  std::size_t index(std::optional<std::size_t> lead, const std::vector<std::size_t>& tail) const {
    const Forms om(base);
    const std::size_t w = tail.empty() ? *lead + 1 : om.index(lead, tail);
    if (auto i = find(tail.size(), w)) return *i;
    throw std::out_of_range("normal form is truncated away");
  }

  /// First basis index with exactly m q's (the blocks are contiguous).
  std::size_t block_start(std::size_t m) const {
    for (std::size_t i = 0; i < qcount.size(); ++i)
      if (qcount[i] >= m) return i;
    return qcount.size();
  }
};

namespace detail {

class CylMul {
 public:
  CylMul(const Algebra& a, std::size_t n) : a_(a), d_(a.dim()), n_(n) {}

  /// Accumulates c * (y · e_b) where y is the wide normal form (m, w); terms with >= n q's drop.
  void right(std::map<std::pair<std::size_t, std::size_t>, Scalar>& acc, std::size_t m, std::size_t w, std::size_t b,
             const Scalar& c) const {
    if (m == 0) {
      for (const auto& [s, x] : slot_product(w, b)) acc[{0, s}] += c * x;
      return;
    }
    const std::size_t head = w / d_, a = w % d_;
    for (const auto& [k, x] : a_.product(a, b).entries) acc[{m, head * d_ + k}] += c * x;  // y' q(ab)
    std::map<std::pair<std::size_t, std::size_t>, Scalar> sub;
    right(sub, m - 1, head, a, Scalar(1));
    for (const auto& [key, x] : sub) {  // -(y' a) qb
      if (key.first + 1 < n_ && sgn(x) != 0) acc[{key.first + 1, key.second * d_ + b}] -= c * x;
    }
    if (m + 1 < n_) acc[{m + 1, w * d_ + b}] += c;  // y' qa qb
  }

 private:
  std::vector<std::pair<std::size_t, Scalar>> slot_product(std::size_t s, std::size_t b) const {
    if (s == 0) return {{b + 1, Scalar(1)}};
    std::vector<std::pair<std::size_t, Scalar>> out;
    for (const auto& [k, x] : a_.product(s - 1, b).entries) out.emplace_back(k + 1, x);
    return out;
  }

  const Algebra& a_;
  std::size_t d_, n_;
};

/// Total weight of the letters (i0, i1, ..) of W_m for a graded algebra; the formal unit weighs 0.
inline int wide_weight(const Algebra& a, const std::vector<std::size_t>& letters) {
  int w = letters[0] == 0 ? 0 : a.degree(letters[0] - 1);
  for (std::size_t k = 1; k < letters.size(); ++k) w += a.degree(letters[k]);
  return w;
}

}  // namespace detail

/// Cyl_n(A) = QA/qA^n.  Default word bound L = 2n.  For a graded A, a
/// nonnegative weight_cap keeps only normal forms of total weight <= cap (the
/// quotient by the ideal of heavier elements).
inline Cylinder q_construction(const AlgebraPtr& a, std::size_t n, std::size_t L = 0, int weight_cap = -1) {
  if (n < 1) throw std::invalid_argument("q_construction needs n >= 1");
  if (L == 0) L = 2 * n;
  if (weight_cap >= 0 && !a->graded()) throw std::invalid_argument("weight cap needs a graded algebra");
  const Forms om(a);
  const std::size_t d = a->dim();
  Cylinder cyl;
  cyl.base = a;
  cyl.n = n;
  cyl.L = L;
  cyl.weight_cap = weight_cap;
  std::vector<std::string> labels;
  std::vector<int> weights;
  cyl.compact.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    cyl.compact[m].assign(om.wide_dim(m), -1);
    for (std::size_t w = (m == 0 ? 1 : 0); w < om.wide_dim(m); ++w) {
      const auto l = om.letters(m, w);
      const int wt = a->graded() ? detail::wide_weight(*a, l) : 0;
      if (weight_cap >= 0 && wt > weight_cap) continue;
      cyl.compact[m][w] = static_cast<long>(labels.size());
      cyl.qcount.push_back(m);
      cyl.wide.push_back(w);
      weights.push_back(wt);
      std::string s = l[0] == 0 ? "" : a->label(l[0] - 1);
      for (std::size_t k = 1; k <= m; ++k) s += (s.empty() ? "q" : " q") + a->label(l[k]);
      labels.push_back(s);
    }
  }
  const std::size_t total = labels.size();
  Algebra alg(a->field(), labels);
  const detail::CylMul mul(*a, n);
  for (std::size_t x = 0; x < total; ++x) {
    const std::size_t mx = cyl.qcount[x], wx = cyl.wide[x];
    for (std::size_t y = 0; y < total; ++y) {
      const std::size_t my = cyl.qcount[y];
      if (mx + my >= n) continue;
      if (weight_cap >= 0 && weights[x] + weights[y] > weight_cap) continue;
      const std::size_t wy = cyl.wide[y];
      const std::size_t scale = Forms::ipow(d, my);
      const std::size_t lead = wy / scale, tail = wy % scale;
      std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
      if (lead == 0) {
        acc[{mx, wx}] = Scalar(1);
      } else {
        mul.right(acc, mx, wx, lead - 1, Scalar(1));
      }
      VecBuilder out(a->field());
      for (const auto& [key, c] : acc) {
        const std::size_t m = key.first + my;
        if (m >= n || sgn(c) == 0) continue;
        auto idx = cyl.find(m, key.second * scale + tail);
        if (!idx) throw std::logic_error("cylinder product left the weight-truncated basis");
        out.add(*idx, c);
      }
      alg.set_product(x, y, out.take());
    }
  }
  if (a->graded()) alg.set_degrees(weights);
  cyl.algebra = share(std::move(alg));
  std::vector<SparseVector> c0, c1, f(total);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t self = *cyl.find(0, i + 1);
    c0.push_back(SparseVector::unit(self));
    VecBuilder b(a->field());
    b.add(self, Scalar(1));
    if (n > 1) b.add(*cyl.find(1, i), Scalar(-1));  // a - qa, with qa = 1~ qa
    c1.push_back(b.take());
    f[self] = SparseVector::unit(i);
  }
  cyl.d0 = AlgebraHom(a, cyl.algebra, SparseMatrix::from_columns(total, c0));
  cyl.d1 = AlgebraHom(a, cyl.algebra, SparseMatrix::from_columns(total, c1));
  cyl.fold = AlgebraHom(cyl.algebra, a, SparseMatrix::from_columns(d, f));

  if (!cyl.d0.multiplicative() || !cyl.d1.multiplicative()) {
    throw ValidationError("cylinder inclusions are not multiplicative");
  }
  std::vector<SparseVector> gens = c0;
  gens.insert(gens.end(), c1.begin(), c1.end());
  if (detail::word_span_dim(*cyl.algebra, gens, L) != total) {
    throw TruncationTooSmall("words of length <= " + std::to_string(L) + " do not span Cyl_" + std::to_string(n));
  }
  return cyl;
}

struct UniversalModel {
  AlgebraPtr base;
  std::size_t n = 0;
  std::size_t L = 0;
  std::vector<std::size_t> offset;  // offset[i]: first index of the degree-2i block
  AlgebraPtr algebra;
  AlgebraHom projection;  // U_n A -> A
  AlgebraHom rho_linear;  // the linear (non-multiplicative) map A -> U_n A, a -> a (as a matrix only)

  std::size_t form_degree(std::size_t idx) const {
    std::size_t i = 0;
    while (i + 1 < offset.size() && idx >= offset[i + 1]) ++i;
    return 2 * i;
  }

  /// Embeds an even form of degree 2i into U_n A.
  SparseVector embed(std::size_t i, const SparseVector& w) const {
    SparseVector v;
    for (const auto& [k, x] : w.entries) v.entries.emplace_back(offset.at(i) + k, x);
    return v;
  }
  /// Degree-2i component as a form.
  SparseVector component(std::size_t i, const SparseVector& v) const {
    SparseVector w;
    const std::size_t hi = i + 1 < offset.size() ? offset[i + 1] : algebra->dim();
    for (const auto& [k, x] : v.entries)
      if (k >= offset[i] && k < hi) w.entries.emplace_back(k - offset[i], x);
    return w;
  }
};

/// The product x∘y = xy + dx dy of x in Ω^{2i} and y in Ω^{2j}, split by
/// half-degree and truncated at half-degree n.
inline void fedosov_product(const Forms& om, std::size_t n, std::size_t i, const SparseVector& x, std::size_t j,
                            const SparseVector& y, std::vector<SparseVector>& out_by_degree) {
  out_by_degree.assign(n, SparseVector());
  if (i + j < n) out_by_degree[i + j] = om.mul(2 * i, x, 2 * j, y);
  if (i + j + 1 < n) {
    const SparseVector dx = om.d(2 * i, x), dy = om.d(2 * j, y);
    out_by_degree[i + j + 1] = om.mul(2 * i + 1, dx, 2 * j + 1, dy);
  }
}

/// U_n(A) = TA/JA^n on even forms.  Default word bound L = 2n.
inline UniversalModel universal_model_trunc(const AlgebraPtr& a, std::size_t n, std::size_t L = 0) {
  if (n < 1) throw std::invalid_argument("universal_model_trunc needs n >= 1");
  if (L == 0) L = 2 * n;
  const Forms om(a);
  UniversalModel u;
  u.base = a;
  u.n = n;
  u.L = L;
  std::size_t total = 0;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    u.offset.push_back(total);
    total += om.dim(2 * i);
    for (std::size_t k = 0; k < om.dim(2 * i); ++k) labels.push_back(om.label(2 * i, k));
  }
  Algebra alg(a->field(), labels);
  std::vector<SparseVector> parts;
  for (std::size_t x = 0; x < total; ++x) {
    const std::size_t i = u.form_degree(x) / 2;
    const SparseVector ex = SparseVector::unit(x - u.offset[i]);
    for (std::size_t y = 0; y < total; ++y) {
      const std::size_t j = u.form_degree(y) / 2;
      if (i + j >= n) continue;
      fedosov_product(om, n, i, ex, j, SparseVector::unit(y - u.offset[j]), parts);
      VecBuilder acc(a->field());
      for (std::size_t k = 0; k < n; ++k) acc.add_shifted(parts[k], u.offset[k]);
      alg.set_product(x, y, acc.take());
    }
  }
  u.algebra = share(std::move(alg));
  std::vector<SparseVector> proj(total), rho;
  for (std::size_t k = 0; k < a->dim(); ++k) {
    proj[k] = SparseVector::unit(k);
    rho.push_back(SparseVector::unit(k));
  }
  u.projection = AlgebraHom(u.algebra, a, SparseMatrix::from_columns(a->dim(), proj));
  u.rho_linear = AlgebraHom(a, u.algebra, SparseMatrix::from_columns(total, rho));
  if (detail::word_span_dim(*u.algebra, rho, L) != total) {
    throw TruncationTooSmall("tensor words of length <= " + std::to_string(L) + " do not span U_" + std::to_string(n));
  }
  return u;
}

/// Stage maps Cyl_{n+1} -> Cyl_n and U_{n+1} -> U_n drop the top block.
inline SparseMatrix drop_top_block(std::size_t big, std::size_t small) {
  std::vector<SparseVector> cols(big);
  for (std::size_t i = 0; i < small; ++i) cols[i] = SparseVector::unit(i);
  return SparseMatrix::from_columns(small, std::move(cols));
}

}  // namespace cqcalc
