#pragma once

// Noncommutative differential forms over a (non-unital) algebra A.
//
// Degree 0 is A itself.  For n >= 1 the degree-n space is Ã ⊗ A^{⊗n}, with
// basis ã0 da1 ... dan where ã0 is either the formal unit or a basis element
// of A.  Internally every degree m >= 0 is handled in the "wide" space
// W_m = Ã ⊗ A^{⊗m}; at degree 0 the forms are the elements of W_0 without a
// formal-unit component.
//
// Index encoding in W_m: letters (i0, i1, ..., im) with i0 in [0, d]
// (0 = formal unit, k+1 = k-th basis element) and ik in [0, d); the index is
// i0 * d^m + i1 * d^{m-1} + ... + im.

#include <functional>
#include <string>
#include <vector>

#include "cqcalc/algebra.hpp"

namespace cqcalc {

class Forms {
 public:
  explicit Forms(AlgebraPtr a) : a_(std::move(a)), d_(a_->dim()) {}

  const AlgebraPtr& algebra() const { return a_; }
  const Algebra& alg() const { return *a_; }
  const Field& field() const { return a_->field(); }
  std::size_t base_dim() const { return d_; }

  static std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
  }

  std::size_t wide_dim(std::size_t m) const { return (d_ + 1) * ipow(d_, m); }

  /// dim Ω^n: dim A for n = 0, (dim A + 1)(dim A)^n otherwise.
  std::size_t dim(std::size_t n) const { return n == 0 ? d_ : wide_dim(n); }

  std::vector<std::size_t> letters(std::size_t m, std::size_t idx) const {
    std::vector<std::size_t> l(m + 1);
    for (std::size_t k = m; k >= 1; --k) {
      l[k] = idx % d_;
      idx /= d_;
    }
    l[0] = idx;
    return l;
  }

  std::size_t encode(const std::vector<std::size_t>& l) const {
    std::size_t idx = l[0];
    for (std::size_t k = 1; k < l.size(); ++k) idx = idx * d_ + l[k];
    return idx;
  }

  /// Index in Ω^n of ã0 da1...dan; lead = std::nullopt means the formal unit.
  std::size_t index(std::optional<std::size_t> lead, const std::vector<std::size_t>& tail) const {
    std::vector<std::size_t> l{lead ? *lead + 1 : 0};
    l.insert(l.end(), tail.begin(), tail.end());
    if (tail.empty()) {
      if (!lead) throw std::invalid_argument("the formal unit is not a degree-0 form");
      return *lead;
    }
    return encode(l);
  }

  std::string label(std::size_t n, std::size_t idx) const {
    if (n == 0) return a_->label(idx);
    const auto l = letters(n, idx);
    std::string s = l[0] == 0 ? "" : a_->label(l[0] - 1);
    for (std::size_t k = 1; k <= n; ++k) s += (s.empty() ? "d" : " d") + a_->label(l[k]);
    return s;
  }

  // ---- conversions between Ω^0 = A and W_0 = Ã
  SparseVector to_wide0(const SparseVector& a) const {
    SparseVector w;
    for (const auto& [i, x] : a.entries) w.entries.emplace_back(i + 1, x);
    return w;
  }
  SparseVector from_wide0(const SparseVector& w) const {
    SparseVector a;
    for (const auto& [i, x] : w.entries) {
      if (i == 0) throw std::logic_error("degree-0 form has a formal-unit component");
      a.entries.emplace_back(i - 1, x);
    }
    return a;
  }
  SparseVector to_wide(std::size_t n, const SparseVector& v) const { return n == 0 ? to_wide0(v) : v; }
  SparseVector from_wide(std::size_t n, const SparseVector& w) const { return n == 0 ? from_wide0(w) : w; }

  // ---- wide-space products

  /// Adds c * (ã0 a) ⊗ tail to acc, where ã0 is letter l0 and a is basis j; tail has code `tail`, length `len`.
  void add_lead_times(VecBuilder& acc, std::size_t l0, std::size_t j, std::size_t tail, std::size_t len,
                      const Scalar& c) const {
    const std::size_t scale = ipow(d_, len);
    if (l0 == 0) {
      acc.add((j + 1) * scale + tail, c);
      return;
    }
    for (const auto& [k, y] : a_->product(l0 - 1, j).entries) acc.add((k + 1) * scale + tail, c * y);
  }

  /// (basis element idx of W_m) * e_j, accumulated with coefficient c.
  void add_rightmul_basis(VecBuilder& acc, std::size_t m, std::size_t idx, std::size_t j, const Scalar& c) const {
    const auto l = letters(m, idx);
    if (m == 0) {
      add_lead_times(acc, l[0], j, 0, 0, c);
      return;
    }
    // (a0 da1..dam) a = (-1)^m a0a1 da2..dam da + Σ_i (-1)^{m-i} a0 da1..d(a_i a_{i+1})..dam+1, a_{m+1} = a
    std::vector<std::size_t> seq(l.begin() + 1, l.end());
    seq.push_back(j);  // a1 .. a_{m+1}, length m+1
    {
      std::size_t tail = 0;
      for (std::size_t k = 1; k < seq.size(); ++k) tail = tail * d_ + seq[k];
      add_lead_times(acc, l[0], seq[0], tail, m, (m % 2 == 0) ? c : Scalar(-c));
    }
    for (std::size_t i = 1; i <= m; ++i) {
      const Scalar sign = ((m - i) % 2 == 0) ? c : Scalar(-c);
      // letters: a1..a_{i-1}, (a_i a_{i+1}), a_{i+2}..a_{m+1}; positions i-1 and i of seq merge
      std::size_t prefix = l[0];
      for (std::size_t k = 0; k + 1 < i; ++k) prefix = prefix * d_ + seq[k];
      std::size_t suffix = 0;
      const std::size_t suffix_len = seq.size() - (i + 1);
      for (std::size_t k = i + 1; k < seq.size(); ++k) suffix = suffix * d_ + seq[k];
      const std::size_t sscale = ipow(d_, suffix_len);
      for (const auto& [p, y] : a_->product(seq[i - 1], seq[i]).entries) {
        acc.add(((prefix * d_ + p) * sscale) + suffix, sign * y);
      }
    }
  }

  SparseVector wide_rightmul(std::size_t m, const SparseVector& w, const SparseVector& a) const {
    VecBuilder acc(field());
    for (const auto& [idx, x] : w.entries)
      for (const auto& [j, y] : a.entries) add_rightmul_basis(acc, m, idx, j, x * y);
    return acc.take();
  }

  SparseVector wide_leftmul(const SparseVector& a, std::size_t m, const SparseVector& w) const {
    VecBuilder acc(field());
    const std::size_t scale = ipow(d_, m);
    for (const auto& [idx, x] : w.entries) {
      const std::size_t l0 = idx / scale, tail = idx % scale;
      for (const auto& [j, y] : a.entries) {
        if (l0 == 0) {
          acc.add((j + 1) * scale + tail, x * y);
        } else {
          for (const auto& [k, z] : a_->product(j, l0 - 1).entries) acc.add((k + 1) * scale + tail, x * y * z);
        }
      }
    }
    return acc.take();
  }

  /// Product W_m x W_n -> W_{m+n}.
  SparseVector wide_mul(std::size_t m, const SparseVector& w, std::size_t n, const SparseVector& v) const {
    VecBuilder acc(field());
    const std::size_t scale = ipow(d_, n);
    for (const auto& [idx, y] : v.entries) {
      const std::size_t l0 = idx / scale, tail = idx % scale;
      SparseVector head = l0 == 0 ? w : wide_rightmul(m, w, SparseVector::unit(l0 - 1));
      for (const auto& [h, x] : head.entries) acc.add(h * scale + tail, x * y);
    }
    return acc.take();
  }

  // ---- form-level products (degree 0 is A)

  SparseVector mul(std::size_t m, const SparseVector& w, std::size_t n, const SparseVector& v) const {
    return from_wide(m + n, wide_mul(m, to_wide(m, w), n, to_wide(n, v)));
  }
  SparseVector left(const SparseVector& a, std::size_t n, const SparseVector& w) const {
    return from_wide(n, wide_leftmul(a, n, to_wide(n, w)));
  }
  SparseVector right(std::size_t n, const SparseVector& w, const SparseVector& a) const {
    return from_wide(n, wide_rightmul(n, to_wide(n, w), a));
  }

  // ---- operators

  /// d: Ω^n -> Ω^{n+1}
  SparseVector d(std::size_t n, const SparseVector& w) const {
    const SparseVector x = to_wide(n, w);
    const std::size_t scale = ipow(d_, n);
    SparseVector out;
    for (const auto& [idx, c] : x.entries) {
      const std::size_t l0 = idx / scale, tail = idx % scale;
      if (l0 == 0) continue;
      out.entries.emplace_back((l0 - 1) * scale + tail, c);  // letters (unit, l0-1, tail)
    }
    std::sort(out.entries.begin(), out.entries.end());
    return out;
  }

  /// b: Ω^n -> Ω^{n-1}, b(ω da) = (-1)^{|ω|}(ωa - aω).
  SparseVector b(std::size_t n, const SparseVector& w) const {
    if (n == 0) return {};
    VecBuilder acc(field());
    const Scalar sign = ((n - 1) % 2 == 0) ? Scalar(1) : Scalar(-1);
    for (const auto& [idx, c] : w.entries) {
      const std::size_t head = idx / d_, a = idx % d_;
      SparseVector om;
      om.entries.emplace_back(head, Scalar(1));
      acc.add(wide_rightmul(n - 1, om, SparseVector::unit(a)), sign * c);
      acc.add(wide_leftmul(SparseVector::unit(a), n - 1, om), -sign * c);
    }
    return from_wide(n - 1, acc.take());
  }

  /// Karoubi operator κ(ω da) = (-1)^{|ω|} da ω; identity in degree 0.
  SparseVector kappa(std::size_t n, const SparseVector& w) const {
    if (n == 0) return w;
    VecBuilder acc(field());
    const Scalar sign = ((n - 1) % 2 == 0) ? Scalar(1) : Scalar(-1);
    for (const auto& [idx, c] : w.entries) {
      const std::size_t head = idx / d_, a = idx % d_;
      SparseVector om;
      om.entries.emplace_back(head, Scalar(1));
      SparseVector da;
      da.entries.emplace_back(a, Scalar(1));  // letters (unit, a) in W_1
      acc.add(wide_mul(1, da, n - 1, om), sign * c);
    }
    return acc.take();
  }

  /// Connes B = Σ_{i=0}^{n} κ^i d : Ω^n -> Ω^{n+1}.
  SparseVector connes_B(std::size_t n, const SparseVector& w) const {
    SparseVector cur = d(n, w);
    VecBuilder acc(field());
    for (std::size_t i = 0; i <= n; ++i) {
      acc.add(cur);
      if (i < n) cur = kappa(n + 1, cur);
    }
    return acc.take();
  }

  // ---- matrices

  SparseMatrix matrix(std::size_t from, std::size_t to, const std::function<SparseVector(const SparseVector&)>& op) const {
    std::vector<SparseVector> cols(dim(from));
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = op(SparseVector::unit(i));
    return SparseMatrix::from_columns(dim(to), std::move(cols));
  }

  SparseMatrix d_matrix(std::size_t n) const {
    return matrix(n, n + 1, [&](const SparseVector& v) { return d(n, v); });
  }
  SparseMatrix b_matrix(std::size_t n) const {
    if (n == 0) return SparseMatrix(0, dim(0));
    return matrix(n, n - 1, [&](const SparseVector& v) { return b(n, v); });
  }
  SparseMatrix kappa_matrix(std::size_t n) const {
    return matrix(n, n, [&](const SparseVector& v) { return kappa(n, v); });
  }
  SparseMatrix B_matrix(std::size_t n) const {
    return matrix(n, n + 1, [&](const SparseVector& v) { return connes_B(n, v); });
  }

  /// Span of commutators [a, ω] for a in A, ω in Ω^n.
  Subspace commutators(std::size_t n) const {
    Echelon e(field(), dim(n));
    for (std::size_t j = 0; j < d_; ++j) {
      const SparseVector a = SparseVector::unit(j);
      for (std::size_t i = 0; i < dim(n); ++i) {
        const SparseVector w = SparseVector::unit(i);
        e.insert(difference(field(), left(a, n, w), right(n, w, a)));
      }
    }
    return Subspace::span(field(), dim(n), e.rref());
  }

  /// Ω^n_♮ = Ω^n / [A, Ω^n]
  Quotient natural_quotient(std::size_t n) const { return quotient_basis(dim(n), commutators(n), field()); }

 private:
  AlgebraPtr a_;
  std::size_t d_;
};

/// The differential graded algebra Ω^{≤R}(A) truncated above form degree R,
/// as a graded structure-constant algebra (degree = form degree).  Basis:
/// Ω^0 first, then Ω^1, ..., Ω^R.  For graded A a nonnegative weight cap keeps
/// only forms of total weight <= cap (the formal unit weighs 0).
struct DeRhamAlgebra {
  AlgebraPtr algebra;
  std::size_t top = 0;
  int weight_cap = -1;
  std::vector<std::vector<long>> compact;                 // compact[r][form index] = basis index or -1
  std::vector<std::pair<std::size_t, std::size_t>> form;  // basis index -> (r, form index)

  /// Image of a degree-r form; components above the weight cap are dropped.
  SparseVector embed(std::size_t r, const SparseVector& w) const {
    SparseVector v;
    if (r > top) return v;
    for (const auto& [i, x] : w.entries)
      if (compact[r][i] >= 0) v.entries.emplace_back(static_cast<std::size_t>(compact[r][i]), x);
    std::sort(v.entries.begin(), v.entries.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    return v;
  }
  SparseVector component(std::size_t r, const SparseVector& v) const {
    SparseVector w;
    for (const auto& [i, x] : v.entries)
      if (form[i].first == r) w.entries.emplace_back(form[i].second, x);
    std::sort(w.entries.begin(), w.entries.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    return w;
  }
};

inline int form_weight(const Forms& om, std::size_t r, std::size_t i) {
  const Algebra& a = om.alg();
  if (r == 0) return a.degree(i);
  const auto l = om.letters(r, i);
  int w = l[0] == 0 ? 0 : a.degree(l[0] - 1);
  for (std::size_t k = 1; k < l.size(); ++k) w += a.degree(l[k]);
  return w;
}

inline DeRhamAlgebra de_rham_algebra(const Forms& om, std::size_t top, int weight_cap = -1) {
  if (weight_cap >= 0 && !om.alg().graded()) throw std::invalid_argument("weight cap needs a graded algebra");
  DeRhamAlgebra out;
  out.top = top;
  out.weight_cap = weight_cap;
  std::vector<std::string> labels;
  std::vector<int> deg, wt;
  out.compact.resize(top + 1);
  for (std::size_t r = 0; r <= top; ++r) {
    out.compact[r].assign(om.dim(r), -1);
    for (std::size_t i = 0; i < om.dim(r); ++i) {
      const int w = weight_cap >= 0 ? form_weight(om, r, i) : 0;
      if (weight_cap >= 0 && w > weight_cap) continue;
      out.compact[r][i] = static_cast<long>(labels.size());
      out.form.emplace_back(r, i);
      labels.push_back(om.label(r, i));
      deg.push_back(static_cast<int>(r));
      wt.push_back(w);
    }
  }
  Algebra a(om.field(), labels);
  for (std::size_t x = 0; x < labels.size(); ++x)
    for (std::size_t y = 0; y < labels.size(); ++y) {
      const auto [r, i] = out.form[x];
      const auto [s, j] = out.form[y];
      if (r + s > top) continue;
      if (weight_cap >= 0 && wt[x] + wt[y] > weight_cap) continue;
      a.set_product(x, y, out.embed(r + s, om.mul(r, SparseVector::unit(i), s, SparseVector::unit(j))));
    }
  a.set_degrees(deg);
  out.algebra = share(std::move(a));
  return out;
}

}  // namespace cqcalc
