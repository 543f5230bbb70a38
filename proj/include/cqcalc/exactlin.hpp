#pragma once

// Exact sparse elimination over Q (fraction-free, integer rows) and F_p
// (word-sized residues).  Everything above this header talks in terms of
// SparseVector/SparseMatrix with mpq entries.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cqcalc/field.hpp"
#include "cqcalc/sparse.hpp"

namespace cqcalc {

namespace detail {

struct ModPArith {
  using Elem = std::uint64_t;
  std::uint64_t p;

  static constexpr bool kFractionFree = false;
  bool is_zero(Elem x) const { return x == 0; }
  Elem zero() const { return 0; }
};

struct IntArith {
  using Elem = mpz_class;
  static constexpr bool kFractionFree = true;
  bool is_zero(const Elem& x) const { return sgn(x) == 0; }
  Elem zero() const { return Elem(0); }
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

/// Incremental echelon form.  Rows are kept semi-reduced (leading entry
/// normalized: 1 over F_p, positive primitive integer row over Z) until
/// `finish` back-substitutes into reduced row-echelon form.
template <class Arith>
class EchelonCore {
 public:
  using Elem = typename Arith::Elem;
  using Row = std::vector<std::pair<std::size_t, Elem>>;

  EchelonCore(Arith arith, std::size_t dim)
      : ar_(std::move(arith)), dim_(dim), pivot_row_(dim, -1), acc_(dim, ar_.zero()), live_(dim, 0), seen_(dim, 0) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Reduces v against the current rows; returns the (normalized) remainder.
  Row reduce(const Row& v) {
    for (const auto& [i, x] : v) push(i, x);
    std::vector<std::size_t> kept;
    while (!heap_.empty()) {
      const std::size_t i = heap_.top();
      heap_.pop();
      if (!live_[i]) continue;
      if (ar_.is_zero(acc_[i])) {
        live_[i] = 0;
        continue;
      }
      const long r = pivot_row_[i];
      if (r < 0) {
        kept.push_back(i);
        live_[i] = 2;  // kept, not on heap
        continue;
      }
      eliminate(i, rows_[static_cast<std::size_t>(r)]);
    }
    Row out;
    std::sort(kept.begin(), kept.end());
    for (std::size_t i : kept) {
      if (!ar_.is_zero(acc_[i])) out.emplace_back(i, acc_[i]);
    }
    for (std::size_t i : touched_) {
      acc_[i] = ar_.zero();
      live_[i] = 0;
      seen_[i] = 0;
    }
    touched_.clear();
    normalize(out);
    return out;
  }

  bool insert(const Row& v) {
    Row r = reduce(v);
    if (r.empty()) return false;
    pivot_row_[r.front().first] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  /// Back-substitution; afterwards rows are fully reduced, sorted by pivot.
  void finish() {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().first > rows_[b].front().first; });
    for (std::size_t idx : order) {
      Row& row = rows_[idx];
      for (;;) {
        bool changed = false;
        for (std::size_t k = 1; k < row.size(); ++k) {
          const long pr = pivot_row_[row[k].first];
          if (pr >= 0) {
            row = combine(row, k, rows_[static_cast<std::size_t>(pr)]);
            changed = true;
            break;
          }
        }
        if (!changed) break;
      }
    }
    std::vector<Row> sorted;
    sorted.reserve(rows_.size());
    std::vector<std::size_t> by_pivot(rows_.size());
    std::iota(by_pivot.begin(), by_pivot.end(), 0);
    std::sort(by_pivot.begin(), by_pivot.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().first < rows_[b].front().first; });
    for (std::size_t i : by_pivot) sorted.push_back(std::move(rows_[i]));
    rows_ = std::move(sorted);
    for (std::size_t i = 0; i < rows_.size(); ++i) pivot_row_[rows_[i].front().first] = static_cast<long>(i);
  }

  const std::vector<Row>& rows() const { return rows_; }
  const Arith& arith() const { return ar_; }

 private:
  void touch(std::size_t i) {
    if (!seen_[i]) {
      seen_[i] = 1;
      touched_.push_back(i);
    }
  }

  void push(std::size_t i, const Elem& x) {
    if (i >= dim_) throw std::out_of_range("vector index exceeds ambient dimension");
    if (live_[i] == 0) {
      touch(i);
      acc_[i] = x;
      live_[i] = 1;
      heap_.push(i);
    } else {
      add_into(i, x);
    }
  }

  void add_into(std::size_t i, const Elem& x) {
    if constexpr (Arith::kFractionFree) {
      acc_[i] += x;
    } else {
      acc_[i] = (acc_[i] + x) % ar_.p;
    }
  }

  // acc <- acc - c * row  (F_p, lead 1)  or  acc <- (L/g) acc - (c/g) row  (Z)
  void eliminate(std::size_t pivot, const Row& row) {
    if constexpr (Arith::kFractionFree) {
      const mpz_class c = acc_[pivot];
      const mpz_class& lead = row.front().second;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), lead.get_mpz_t());
      const mpz_class scale = lead / g;
      const mpz_class factor = c / g;
      if (scale != 1) {
        for (std::size_t i : touched_) {
          if (live_[i] && sgn(acc_[i]) != 0) acc_[i] *= scale;
        }
      }
      for (const auto& [j, y] : row) {
        if (live_[j] == 0) {
          touch(j);
          acc_[j] = -factor * y;
          live_[j] = 1;
          heap_.push(j);
        } else {
          acc_[j] -= factor * y;
        }
      }
    } else {
      const std::uint64_t c = acc_[pivot];
      const std::uint64_t p = ar_.p;
      for (const auto& [j, y] : row) {
        const std::uint64_t t = (p - mulmod(c, y, p)) % p;
        if (live_[j] == 0) {
          touch(j);
          acc_[j] = t;
          live_[j] = 1;
          heap_.push(j);
        } else {
          acc_[j] = (acc_[j] + t) % p;
        }
      }
    }
    live_[pivot] = 0;
    acc_[pivot] = ar_.zero();
  }

  Row combine(const Row& row, std::size_t k, const Row& other) {
    // remove entry k of `row` using `other` (whose lead sits at row[k].first)
    std::map<std::size_t, Elem> m;
    if constexpr (Arith::kFractionFree) {
      const mpz_class c = row[k].second;
      const mpz_class& lead = other.front().second;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), lead.get_mpz_t());
      const mpz_class scale = lead / g, factor = c / g;
      for (const auto& [j, y] : row) m[j] += scale * y;
      for (const auto& [j, y] : other) m[j] -= factor * y;
    } else {
      const std::uint64_t p = ar_.p, c = row[k].second;
      for (const auto& [j, y] : row) m[j] = y;
      for (const auto& [j, y] : other) m[j] = (m[j] + p - mulmod(c, y, p)) % p;
    }
    Row out;
    for (auto& [j, y] : m) {
      if (!ar_.is_zero(y)) out.emplace_back(j, y);
    }
    normalize(out);
    return out;
  }

  void normalize(Row& r) const {
    if (r.empty()) return;
    if constexpr (Arith::kFractionFree) {
      mpz_class g = 0;
      for (const auto& e : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (sgn(r.front().second) < 0) g = -g;
      if (g != 1) {
        for (auto& e : r) e.second /= g;
      }
    } else {
      const std::uint64_t inv = powmod(r.front().second, ar_.p - 2, ar_.p);
      if (inv != 1) {
        for (auto& e : r) e.second = mulmod(e.second, inv, ar_.p);
      }
    }
  }

  Arith ar_;
  std::size_t dim_;
  std::vector<long> pivot_row_;
  std::vector<Row> rows_;
  std::vector<Elem> acc_;
  std::vector<char> live_;  // 0: absent, 1: on heap, 2: kept
  std::vector<char> seen_;
  std::vector<std::size_t> touched_;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap_;
};

}  // namespace detail

/// Echelon form over a runtime field.  Not thread-safe (scratch buffers);
/// build one per computation.
class Echelon {
 public:
  Echelon(const Field& f, std::size_t dim) : field_(f), dim_(dim) {
    if (f.is_rationals()) {
      q_.emplace(detail::IntArith{}, dim);
    } else {
      p_.emplace(detail::ModPArith{f.characteristic()}, dim);
    }
  }

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return q_ ? q_->rank() : p_->rank(); }

  bool insert(const SparseVector& v) {
    if (q_) return q_->insert(to_int(v));
    return p_->insert(to_mod(v));
  }

  /// True iff v lies in the current span.
  bool contains(const SparseVector& v) {
    if (q_) return q_->reduce(to_int(v)).empty();
    return p_->reduce(to_mod(v)).empty();
  }

  /// Remainder of v modulo the span, up to a nonzero scalar; empty iff v is in the span.
  SparseVector remainder(const SparseVector& v) {
    if (q_) return from_int(q_->reduce(to_int(v)));
    return from_mod(p_->reduce(to_mod(v)));
  }

  /// Reduced row-echelon basis (leading coefficient 1), sorted by pivot.
  std::vector<SparseVector> rref() {
    std::vector<SparseVector> out;
    if (q_) {
      q_->finish();
      for (const auto& r : q_->rows()) {
        SparseVector v;
        const mpz_class lead = r.front().second;
        for (const auto& [i, x] : r) v.entries.emplace_back(i, Scalar(x, lead));
        for (auto& e : v.entries) e.second.canonicalize();
        out.push_back(std::move(v));
      }
    } else {
      p_->finish();
      out.reserve(p_->rows().size());
      for (const auto& r : p_->rows()) out.push_back(from_mod(r));
    }
    return out;
  }

 private:
  std::vector<std::pair<std::size_t, mpz_class>> to_int(const SparseVector& v) const {
    mpz_class l = 1;
    for (const auto& e : v.entries) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
    std::vector<std::pair<std::size_t, mpz_class>> r;
    r.reserve(v.entries.size());
    for (const auto& [i, x] : v.entries) {
      if (sgn(x) != 0) r.emplace_back(i, x.get_num() * (l / x.get_den()));
    }
    return r;
  }
  std::vector<std::pair<std::size_t, std::uint64_t>> to_mod(const SparseVector& v) const {
    std::vector<std::pair<std::size_t, std::uint64_t>> r;
    r.reserve(v.entries.size());
    for (const auto& [i, x] : v.entries) {
      const std::uint64_t y = field_.residue(x);
      if (y) r.emplace_back(i, y);
    }
    return r;
  }
  static SparseVector from_int(const std::vector<std::pair<std::size_t, mpz_class>>& r) {
    SparseVector v;
    for (const auto& [i, x] : r) v.entries.emplace_back(i, Scalar(x));
    return v;
  }
  static SparseVector from_mod(const std::vector<std::pair<std::size_t, std::uint64_t>>& r) {
    SparseVector v;
    for (const auto& [i, x] : r) v.entries.emplace_back(i, Scalar(static_cast<unsigned long>(x)));
    return v;
  }

  Field field_;
  std::size_t dim_;
  std::optional<detail::EchelonCore<detail::IntArith>> q_;
  std::optional<detail::EchelonCore<detail::ModPArith>> p_;
};

/// A subspace of k^ambient, stored by its reduced row-echelon basis.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const Field& f, std::size_t ambient, const std::vector<SparseVector>& gens) {
    Echelon e(f, ambient);
    for (const auto& g : gens) e.insert(g);
    return Subspace(f, ambient, e.rref());
  }

  static Subspace zero(const Field& f, std::size_t ambient) { return Subspace(f, ambient, {}); }

  static Subspace full(const Field& f, std::size_t ambient) {
    std::vector<SparseVector> b;
    for (std::size_t i = 0; i < ambient; ++i) b.push_back(SparseVector::unit(i));
    return Subspace(f, ambient, std::move(b));
  }

  const Field& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t i) const { return pivot_pos_.at(i) >= 0; }

  /// Reduces v modulo the subspace to the canonical representative
  /// supported on non-pivot coordinates.
  SparseVector normal_form(const SparseVector& v) const {
    VecBuilder b(field_);
    b.add(v);
    SparseVector cur = b.take();
    // Basis rows are fully reduced, so one pass over pivot entries suffices.
    VecBuilder out(field_);
    out.add(cur);
    for (const auto& [i, x] : cur.entries) {
      const long r = pivot_pos_.at(i);
      if (r >= 0) out.add(basis_[static_cast<std::size_t>(r)], -x);
    }
    return out.take();
  }

  bool contains(const SparseVector& v) const { return normal_form(v).empty(); }

  bool contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const SparseVector& v) { return contains(v); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Subspace(const Field& f, std::size_t ambient, std::vector<SparseVector> basis)
      : field_(f), ambient_(ambient), basis_(std::move(basis)), pivot_pos_(ambient, -1) {
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const std::size_t p = basis_[r].entries.front().first;
      pivots_.push_back(p);
      pivot_pos_[p] = static_cast<long>(r);
    }
  }

  Field field_;
  std::size_t ambient_ = 0;
  std::vector<SparseVector> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<long> pivot_pos_;
};

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  std::vector<SparseVector> g = a.basis();
  g.insert(g.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.field(), a.ambient(), g);
}

inline Subspace image(const Field& f, const SparseMatrix& m) {
  return Subspace::span(f, m.rows(), m.columns());
}

inline std::size_t rank(const SparseMatrix& m, const Field& f) {
  Echelon e(f, m.rows());
  for (const auto& c : m.columns()) e.insert(c);
  return e.rank();
}

/// Null space of m with canonical basis: one vector per free column, free
/// variable set to 1 and other free variables zero.
inline Subspace kernel_basis(const SparseMatrix& m, const Field& f) {
  const SparseMatrix rowsT = m.transpose();  // columns of rowsT are rows of m
  Echelon e(f, m.cols());
  for (const auto& r : rowsT.columns()) e.insert(r);
  const auto rr = e.rref();
  std::vector<long> pivot_of(m.cols(), -1);
  for (std::size_t r = 0; r < rr.size(); ++r) pivot_of[rr[r].entries.front().first] = static_cast<long>(r);
  // column index -> list of (pivot col, coeff) where the free column appears
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> appears(m.cols());
  for (const auto& row : rr) {
    const std::size_t p = row.entries.front().first;
    for (std::size_t k = 1; k < row.entries.size(); ++k) {
      appears[row.entries[k].first].emplace_back(p, row.entries[k].second);
    }
  }
  std::vector<SparseVector> gens;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (pivot_of[j] >= 0) continue;
    VecBuilder b(f);
    b.add(j, Scalar(1));
    for (const auto& [p, c] : appears[j]) b.add(p, -c);
    gens.push_back(b.take());
  }
  return Subspace::span(f, m.cols(), gens);
}

/// Quotient ambient / sub: the quotient basis is the set of non-pivot ambient
/// indices; `projection` maps ambient coordinates to quotient coordinates.
struct Quotient {
  std::vector<std::size_t> representatives;  // ambient index of each quotient basis vector
  std::vector<long> position;                // ambient index -> quotient index or -1
  SparseMatrix projection;                   // dim quotient x dim ambient

  std::size_t dim() const { return representatives.size(); }

  SparseVector project(const Field& f, const SparseVector& v) const { return projection.apply(f, v); }

  SparseVector lift(std::size_t q) const { return SparseVector::unit(representatives.at(q)); }
};

inline Quotient quotient_basis(std::size_t ambient, const Subspace& sub, const Field& f) {
  Quotient q;
  q.position.assign(ambient, -1);
  for (std::size_t i = 0; i < ambient; ++i) {
    if (!sub.is_pivot(i)) {
      q.position[i] = static_cast<long>(q.representatives.size());
      q.representatives.push_back(i);
    }
  }
  std::vector<SparseVector> cols(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    const SparseVector nf = sub.normal_form(SparseVector::unit(i));
    VecBuilder b(f);
    for (const auto& [j, c] : nf.entries) b.add(static_cast<std::size_t>(q.position[j]), c);
    cols[i] = b.take();
  }
  q.projection = SparseMatrix::from_columns(q.representatives.size(), std::move(cols));
  return q;
}

inline bool membership(const SparseVector& v, const Subspace& sub) { return sub.contains(v); }

/// Some x with m x = rhs (free variables zero), or nullopt.
inline std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& rhs, const Field& f) {
  if (rhs.max_index_bound() > m.rows()) throw std::invalid_argument("rhs dimension mismatch");
  const std::size_t n = m.cols();
  const SparseMatrix t = m.transpose();
  Echelon e(f, n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVector row = t.column(i);
    const Scalar r = rhs.at(i);
    if (sgn(r) != 0) row.entries.emplace_back(n, r);
    e.insert(row);
  }
  const auto rr = e.rref();
  VecBuilder x(f);
  for (const auto& row : rr) {
    const std::size_t p = row.entries.front().first;
    if (p == n) return std::nullopt;
    if (row.entries.back().first == n) x.add(p, row.entries.back().second);
  }
  return x.take();
}

/// Solves many right-hand sides against the same matrix; element k is the
/// solution for rhs[k] (or nullopt).
inline std::vector<std::optional<SparseVector>> solve_many(const SparseMatrix& m,
                                                           const std::vector<SparseVector>& rhs,
                                                           const Field& f) {
  std::vector<std::optional<SparseVector>> out;
  out.reserve(rhs.size());
  for (const auto& r : rhs) out.push_back(solve(m, r, f));
  return out;
}

}  // namespace cqcalc
