#pragma once

// Truncated power spans u + D_1 + ... + D_n: A -> B (B graded, D_i of degree i),
// connections φ: A -> Ω²A, and extension of spans by one degree.
//
// Convention: u + T is multiplicative, so the degree-i identity reads
//   D_i(ab) = u(a)D_i(b) + D_i(a)u(b) + Σ_{j=1}^{i-1} D_j(a)D_{i-j}(b).

#include <optional>
#include <vector>

#include "cqcalc/cochain.hpp"
#include "cqcalc/constructions.hpp"
#include "cqcalc/errors.hpp"

namespace cqcalc {

struct SpanData {
  AlgebraHom u;                 // A -> B, lands in degree 0
  std::vector<SparseMatrix> D;  // D[i-1]: A -> B, lands in degree i

  const AlgebraPtr& source() const { return u.source; }
  const AlgebraPtr& target() const { return u.target; }
  std::size_t length() const { return D.size(); }
  const SparseMatrix& Di(std::size_t i) const { return D.at(i - 1); }
};

struct SpanFailure {
  std::size_t degree = 0;
  std::size_t a = 0, b = 0;
  SparseVector residual;
};

struct SpanReport {
  bool u_multiplicative = false;
  bool degrees_ok = false;                   // u in degree 0, D_i in degree i
  std::vector<std::size_t> failing_pairs;    // per degree 1..n
  std::optional<SpanFailure> first_failure;

  bool passed() const {
    if (!u_multiplicative || !degrees_ok) return false;
    for (auto c : failing_pairs)
      if (c) return false;
    return true;
  }
};

namespace detail {
inline bool lands_in_degree(const Algebra& b, const SparseMatrix& m, int deg) {
  for (const auto& col : m.columns())
    for (const auto& e : col.entries)
      if (b.degree(e.first) != deg) return false;
  return true;
}
}  // namespace detail

inline SparseVector span_residual(const SpanData& s, std::size_t i, std::size_t a, std::size_t b) {
  const Algebra& A = *s.source();
  const Algebra& B = *s.target();
  const Field& f = A.field();
  VecBuilder acc(f);
  acc.add(s.Di(i).apply(f, A.product(a, b)));
  acc.add(B.mul(s.u.image(a), s.Di(i).column(b)), Scalar(-1));
  acc.add(B.mul(s.Di(i).column(a), s.u.image(b)), Scalar(-1));
  for (std::size_t j = 1; j < i; ++j) acc.add(B.mul(s.Di(j).column(a), s.Di(i - j).column(b)), Scalar(-1));
  return acc.take();
}

inline SpanReport verify_span(const SpanData& s) {
  const Algebra& A = *s.source();
  const Algebra& B = *s.target();
  SpanReport r;
  r.u_multiplicative = s.u.multiplicative();
  r.degrees_ok = B.graded() && detail::lands_in_degree(B, s.u.matrix, 0);
  for (std::size_t i = 1; i <= s.length() && r.degrees_ok; ++i)
    r.degrees_ok = detail::lands_in_degree(B, s.Di(i), static_cast<int>(i));
  for (std::size_t i = 1; i <= s.length(); ++i) {
    std::size_t bad = 0;
    for (std::size_t a = 0; a < A.dim(); ++a)
      for (std::size_t b = 0; b < A.dim(); ++b) {
        SparseVector res = span_residual(s, i, a, b);
        if (res.empty()) continue;
        ++bad;
        if (!r.first_failure) r.first_failure = SpanFailure{i, a, b, std::move(res)};
      }
    r.failing_pairs.push_back(bad);
  }
  return r;
}

/// φ: A -> Ω²A with -δφ = d∪d, i.e. φ(ab) = aφ(b) + φ(a)b + da db.
/// A degree-bounded connection on a graded, degree-truncated algebra only
/// imposes this on pairs with deg a + deg b <= the top degree.
struct Connection {
  AlgebraPtr base;
  SparseMatrix phi;  // dim Ω² x dim A
  bool degree_bounded = false;
};

namespace detail {
inline bool pair_in_range(const Algebra& a, bool bounded, std::size_t x, std::size_t y) {
  return !bounded || a.degree(x) + a.degree(y) <= a.max_degree();
}
}  // namespace detail

/// Pairs (a, b) on which -δφ(a,b) != da db.
inline std::size_t connection_defects(const Connection& c) {
  const Forms om(c.base);
  const Algebra& A = *c.base;
  const Field& f = A.field();
  std::size_t bad = 0;
  for (std::size_t x = 0; x < A.dim(); ++x)
    for (std::size_t y = 0; y < A.dim(); ++y) {
      if (!detail::pair_in_range(A, c.degree_bounded, x, y)) continue;
      VecBuilder acc(f);
      acc.add(om.left(SparseVector::unit(x), 2, c.phi.column(y)), Scalar(-1));
      acc.add(c.phi.apply(f, A.product(x, y)));
      acc.add(om.right(2, c.phi.column(x), SparseVector::unit(y)), Scalar(-1));
      acc.add(om.mul(1, om.d(0, SparseVector::unit(x)), 1, om.d(0, SparseVector::unit(y))), Scalar(-1));
      if (!acc.take().empty()) ++bad;
    }
  return bad;
}

/// Solves the linear system -δφ = d∪d; nullopt when it is inconsistent.
inline std::optional<Connection> find_connection(const AlgebraPtr& a, bool degree_bounded = false) {
  if (degree_bounded && !a->graded()) throw std::invalid_argument("degree-bounded connection needs a graded algebra");
  const Forms om(a);
  const Algebra& A = *a;
  const Field& f = A.field();
  const std::size_t d = A.dim(), w = om.dim(2);
  std::vector<VecBuilder> cols(d * w, VecBuilder(f));
  VecBuilder rhs(f);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      if (!detail::pair_in_range(A, degree_bounded, x, y)) continue;
      const std::size_t row0 = (x * d + y) * w;
      rhs.add_shifted(om.mul(1, om.d(0, SparseVector::unit(x)), 1, om.d(0, SparseVector::unit(y))), row0);
      for (std::size_t k = 0; k < w; ++k) {
        const SparseVector e = SparseVector::unit(k);
        cols[y * w + k].add_shifted(om.left(SparseVector::unit(x), 2, e), row0, Scalar(-1));
        cols[x * w + k].add_shifted(om.right(2, e, SparseVector::unit(y)), row0, Scalar(-1));
      }
      for (const auto& [z, c] : A.product(x, y).entries)
        for (std::size_t k = 0; k < w; ++k) cols[z * w + k].add(row0 + k, c);
    }
  std::vector<SparseVector> mcols;
  for (auto& c : cols) mcols.push_back(c.take());
  const auto sol = solve(SparseMatrix::from_columns(d * d * w, std::move(mcols)), rhs.take(), f);
  if (!sol) return std::nullopt;
  std::vector<SparseVector> phi(d);
  for (std::size_t x = 0; x < d; ++x) {
    SparseVector v;
    for (const auto& [i, c] : sol->entries)
      if (i / w == x) v.entries.emplace_back(i % w, c);
    phi[x] = std::move(v);
  }
  return Connection{a, SparseMatrix::from_columns(w, std::move(phi)), degree_bounded};
}

/// On a truncated tensor algebra: φ(v) = 0 on letters, φ(v·w) = vφ(w) + dv dw.
inline Connection tensor_connection(const TensorAlgebra& t) {
  const Forms om(t.algebra);
  const Field& f = t.algebra->field();
  const std::size_t n = t.algebra->dim();
  std::vector<SparseVector> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto word = t.words.decode(i);
    if (word.size() < 2) continue;
    const std::size_t v = t.words.encode({word[0]});
    const std::size_t rest = t.words.encode(std::vector<std::size_t>(word.begin() + 1, word.end()));
    phi[i] = sum(f, om.left(SparseVector::unit(v), 2, phi[rest]),
                 om.mul(1, om.d(0, SparseVector::unit(v)), 1, om.d(0, SparseVector::unit(rest))));
  }
  return Connection{t.algebra, SparseMatrix::from_columns(om.dim(2), std::move(phi)), true};
}

/// Adds D_{n+1} = g∘φ, where g(ã0 da1 da2) = u(ã0)·c(a1, a2) and
/// c = Σ_{i=1}^{n} D_i ∪ D_{n+1-i}.
inline SpanData extend_span(const SpanData& s, const Connection& conn) {
  const Algebra& A = *s.source();
  const Algebra& B = *s.target();
  const Field& f = A.field();
  const std::size_t n = s.length();
  if (!verify_span(s).passed()) throw std::invalid_argument("input span fails its identity");
  if (connection_defects(conn) != 0) throw NoConnection("connection does not satisfy -δφ = d∪d");
  if (B.max_degree() < static_cast<int>(n + 1)) throw TruncationTooSmall("target has no component of degree n+1");
  Cochain c(2, A.dim(), B.dim());
  for (std::size_t t = 0; t < c.values.size(); ++t) {
    const auto ab = c.tuple(t);
    VecBuilder acc(f);
    for (std::size_t i = 1; i <= n; ++i) acc.add(B.mul(s.Di(i).column(ab[0]), s.Di(n + 1 - i).column(ab[1])));
    c.values[t] = acc.take();
  }
  if (n >= 1 && !hochschild_delta(c, A, bimodule_via(s.u)).is_zero()) throw NotACocycle("Σ D_i ∪ D_{n+1-i} is not a cocycle");
  const Forms om(s.source());
  std::vector<SparseVector> g(om.dim(2));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto l = om.letters(2, k);
    const SparseVector& v = c.at({l[1], l[2]});
    g[k] = l[0] == 0 ? v : B.mul(s.u.image(l[0] - 1), v);
  }
  SpanData out = s;
  out.D.push_back(SparseMatrix::from_columns(B.dim(), std::move(g)).compose(f, conn.phi));
  return out;
}

/// Taylor span on A = t·k[t]/t^{N+1} into B = k[y, s]/(total degree > N, s^{S+1}),
/// graded by s-degree: u(t^k) = y^k and D_i(t^k) = C(k, i) y^{k-i} s^i for i <= count.
/// Here u + T is t ↦ y + s.
struct TaylorSpan {
  TensorAlgebra source;
  AlgebraPtr target;
  SpanData span;
  std::size_t N = 0, S = 0;

  std::size_t monomial(std::size_t i, std::size_t j) const;  // index of y^i s^j
};

namespace detail {
inline std::vector<std::pair<std::size_t, std::size_t>> taylor_monomials(std::size_t N, std::size_t S) {
  std::vector<std::pair<std::size_t, std::size_t>> m;
  for (std::size_t j = 0; j <= S; ++j)
    for (std::size_t i = 0; i + j <= N; ++i) m.emplace_back(i, j);
  return m;
}
}  // namespace detail

inline std::size_t TaylorSpan::monomial(std::size_t i, std::size_t j) const {
  const auto m = detail::taylor_monomials(N, S);
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k] == std::make_pair(i, j)) return k;
  throw std::out_of_range("monomial truncated away");
}

inline TaylorSpan taylor_span(std::size_t N, std::size_t S, std::size_t count, const Field& f) {
  if (count > S) throw std::invalid_argument("more span components than target degrees");
  TaylorSpan t{tensor_algebra_trunc(1, N, f), nullptr, {}, N, S};
  const auto mons = detail::taylor_monomials(N, S);
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (const auto& [i, j] : mons) {
    std::string l = i == 0 && j == 0 ? "1" : "";
    if (i) l += i == 1 ? "y" : "y^" + std::to_string(i);
    if (j) l += j == 1 ? "s" : "s^" + std::to_string(j);
    labels.push_back(l);
    degrees.push_back(static_cast<int>(j));
  }
  Algebra b(f, labels);
  for (std::size_t x = 0; x < mons.size(); ++x)
    for (std::size_t y = 0; y < mons.size(); ++y) {
      const std::size_t i = mons[x].first + mons[y].first, j = mons[x].second + mons[y].second;
      if (i + j <= N && j <= S) b.set_product(x, y, SparseVector::unit(t.monomial(i, j)));
    }
  b.set_unit(0);
  b.set_degrees(degrees);
  t.target = share(std::move(b));
  const std::size_t dim = t.source.algebra->dim();
  std::vector<SparseVector> u(dim);
  for (std::size_t k = 1; k <= N; ++k) u[k - 1] = SparseVector::unit(t.monomial(k, 0));
  t.span.u = AlgebraHom(t.source.algebra, t.target, SparseMatrix::from_columns(mons.size(), u));
  for (std::size_t i = 1; i <= count; ++i) {
    std::vector<SparseVector> cols(dim);
    for (std::size_t k = i; k <= N; ++k) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), k, i);
      VecBuilder v(f);
      v.add(t.monomial(k - i, i), Scalar(binom));
      cols[k - 1] = v.take();
    }
    t.span.D.push_back(SparseMatrix::from_columns(mons.size(), cols));
  }
  return t;
}

}  // namespace cqcalc
