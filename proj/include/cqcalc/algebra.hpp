#pragma once

// Finite-dimensional associative algebras given by structure constants,
// their homomorphisms, ideals and quotients.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cqcalc/errors.hpp"
#include "cqcalc/exactlin.hpp"

namespace cqcalc {

class Algebra {
 public:
  Algebra() = default;

  /// Builds an algebra with all products zero.
  Algebra(Field f, std::vector<std::string> labels)
      : field_(f), labels_(std::move(labels)), table_(labels_.size(), std::vector<SparseVector>(labels_.size())) {}

  const Field& field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  const SparseVector& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  void set_product(std::size_t i, std::size_t j, SparseVector v) {
    if (v.max_index_bound() > dim()) throw ValidationError("product entry out of range");
    table_.at(i).at(j) = std::move(v);
  }

  const std::optional<std::size_t>& unit() const { return unit_; }
  void set_unit(std::optional<std::size_t> u) { unit_ = u; }

  /// Optional homogeneous grading of the basis (empty when ungraded).
  const std::vector<int>& degrees() const { return degrees_; }
  void set_degrees(std::vector<int> d) {
    if (!d.empty() && d.size() != dim()) throw ValidationError("degree vector has wrong length");
    degrees_ = std::move(d);
  }
  bool graded() const { return !degrees_.empty(); }
  int degree(std::size_t i) const { return degrees_.at(i); }

  SparseVector mul(const SparseVector& a, const SparseVector& b) const {
    VecBuilder acc(field_);
    for (const auto& [i, x] : a.entries) {
      for (const auto& [j, y] : b.entries) acc.add(table_[i][j], x * y);
    }
    return acc.take();
  }

  SparseVector mul_basis_left(std::size_t i, const SparseVector& b) const {
    VecBuilder acc(field_);
    for (const auto& [j, y] : b.entries) acc.add(table_[i][j], y);
    return acc.take();
  }

  SparseVector mul_basis_right(const SparseVector& a, std::size_t j) const {
    VecBuilder acc(field_);
    for (const auto& [i, x] : a.entries) acc.add(table_[i][j], x);
    return acc.take();
  }

  /// First (i,j,k) with (e_i e_j) e_k != e_i (e_j e_k), if any.
  std::optional<std::array<std::size_t, 3>> associativity_failure() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const SparseVector& ij = table_[i][j];
        for (std::size_t k = 0; k < n; ++k) {
          if (mul_basis_right(ij, k) != mul_basis_left(i, table_[j][k])) return std::array{i, j, k};
        }
      }
    return std::nullopt;
  }

  /// Throws ValidationError on shape, unit, grading or associativity violations.
  void validate(bool check_associativity = true) const {
    const std::size_t n = dim();
    if (table_.size() != n) throw ValidationError("structure table has wrong number of rows");
    for (std::size_t i = 0; i < n; ++i) {
      if (table_[i].size() != n) throw ValidationError("structure table row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < n; ++j) {
        if (table_[i][j].max_index_bound() > n) throw ValidationError("structure constant index out of range");
      }
    }
    if (unit_) {
      if (*unit_ >= n) throw ValidationError("unit index out of range");
      for (std::size_t i = 0; i < n; ++i) {
        if (table_[*unit_][i] != SparseVector::unit(i) || table_[i][*unit_] != SparseVector::unit(i)) {
          throw ValidationError("designated unit does not act as identity on basis element " + std::to_string(i));
        }
      }
    }
    if (graded()) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (const auto& e : table_[i][j].entries) {
            if (degrees_[e.first] != degrees_[i] + degrees_[j]) throw ValidationError("product is not homogeneous");
          }
    }
    if (check_associativity) {
      if (auto t = associativity_failure()) {
        throw ValidationError("non-associative at basis triple (" + std::to_string((*t)[0]) + ", " +
                              std::to_string((*t)[1]) + ", " + std::to_string((*t)[2]) + ")");
      }
    }
  }

  /// Left multiplication by a as a matrix.
  SparseMatrix left_mult(const SparseVector& a) const {
    std::vector<SparseVector> cols(dim());
    for (std::size_t j = 0; j < dim(); ++j) cols[j] = mul_basis_right(a, j);
    return SparseMatrix::from_columns(dim(), std::move(cols));
  }

  SparseMatrix right_mult(const SparseVector& b) const {
    std::vector<SparseVector> cols(dim());
    for (std::size_t i = 0; i < dim(); ++i) cols[i] = mul_basis_left(i, b);
    return SparseMatrix::from_columns(dim(), std::move(cols));
  }

  /// Indices of basis elements of the given degree (graded algebras only).
  std::vector<std::size_t> component(int deg) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degrees_.at(i) == deg) out.push_back(i);
    return out;
  }

  int max_degree() const {
    int m = 0;
    for (int d : degrees_) m = std::max(m, d);
    return m;
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.field_ == b.field_ && a.labels_ == b.labels_ && a.table_ == b.table_ && a.unit_ == b.unit_ &&
           a.degrees_ == b.degrees_;
  }

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::vector<std::vector<SparseVector>> table_;
  std::optional<std::size_t> unit_;
  std::vector<int> degrees_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline AlgebraPtr share(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

/// Linear map between algebras; `multiplicative()` checks it is a homomorphism.
struct AlgebraHom {
  AlgebraPtr source;
  AlgebraPtr target;
  SparseMatrix matrix;  // target.dim x source.dim

  AlgebraHom() = default;
  AlgebraHom(AlgebraPtr s, AlgebraPtr t, SparseMatrix m) : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim()) {
      throw ValidationError("homomorphism matrix has wrong shape");
    }
  }

  static AlgebraHom identity(const AlgebraPtr& a) { return AlgebraHom(a, a, SparseMatrix::identity(a->dim())); }

  const Field& field() const { return target->field(); }

  SparseVector apply(const SparseVector& x) const { return matrix.apply(field(), x); }
  const SparseVector& image(std::size_t i) const { return matrix.column(i); }

  /// First basis pair (i,j) with f(e_i e_j) != f(e_i) f(e_j).
  std::optional<std::pair<std::size_t, std::size_t>> multiplicativity_failure() const {
    const std::size_t n = source->dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (apply(source->product(i, j)) != target->mul(image(i), image(j))) return std::pair{i, j};
      }
    return std::nullopt;
  }

  bool multiplicative() const { return !multiplicativity_failure().has_value(); }

  void require_multiplicative() const {
    if (auto p = multiplicativity_failure()) {
      throw ValidationError("map is not multiplicative on basis pair (" + std::to_string(p->first) + ", " +
                            std::to_string(p->second) + ")");
    }
  }

  bool surjective() const { return rank(matrix, field()) == target->dim(); }
  bool injective() const { return rank(matrix, field()) == source->dim(); }

  /// this ∘ other
  AlgebraHom after(const AlgebraHom& other) const {
    return AlgebraHom(other.source, target, matrix.compose(field(), other.matrix));
  }
};

/// Span of all products x*y with x from u and y from w.
inline Subspace subspace_product(const Algebra& a, const Subspace& u, const Subspace& w) {
  Echelon e(a.field(), a.dim());
  for (const auto& x : u.basis())
    for (const auto& y : w.basis()) e.insert(a.mul(x, y));
  return Subspace::span(a.field(), a.dim(), e.rref());
}

/// Two-sided ideal generated by `gens` (no unit is assumed: includes the generators themselves).
inline Subspace ideal_closure(const Algebra& a, const std::vector<SparseVector>& gens) {
  Echelon e(a.field(), a.dim());
  std::vector<SparseVector> queue;
  for (const auto& g : gens) {
    if (e.insert(g)) queue.push_back(g);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const SparseVector v = queue[head];
    for (std::size_t i = 0; i < a.dim(); ++i) {
      SparseVector l = a.mul_basis_left(i, v);
      if (e.insert(l)) queue.push_back(std::move(l));
      SparseVector r = a.mul_basis_right(v, i);
      if (e.insert(r)) queue.push_back(std::move(r));
    }
  }
  return Subspace::span(a.field(), a.dim(), e.rref());
}

/// A two-sided ideal, stored as a subspace of its parent.
struct IdealBasis {
  AlgebraPtr parent;
  Subspace sub;

  /// Ideal generated by the given elements.
  static IdealBasis generated(const AlgebraPtr& a, const std::vector<SparseVector>& gens) {
    return IdealBasis{a, ideal_closure(*a, gens)};
  }

  static IdealBasis zero(const AlgebraPtr& a) { return IdealBasis{a, Subspace::zero(a->field(), a->dim())}; }
  static IdealBasis whole(const AlgebraPtr& a) { return IdealBasis{a, Subspace::full(a->field(), a->dim())}; }

  std::size_t dim() const { return sub.dim(); }

  /// Checks closure under multiplication by basis elements on both sides.
  bool is_ideal() const {
    for (const auto& v : sub.basis())
      for (std::size_t i = 0; i < parent->dim(); ++i) {
        if (!sub.contains(parent->mul_basis_left(i, v)) || !sub.contains(parent->mul_basis_right(v, i))) return false;
      }
    return true;
  }
};

/// I^n: span of n-fold products of elements of I.
inline IdealBasis ideal_power(const IdealBasis& i, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ideal_power needs n >= 1");
  Subspace cur = i.sub;
  for (std::size_t k = 1; k < n && cur.dim() > 0; ++k) cur = subspace_product(*i.parent, cur, i.sub);
  return IdealBasis{i.parent, cur};
}

/// Quotient algebra A/I with the projection.  Quotient basis labels are the
/// labels of the non-pivot representatives.
inline std::pair<AlgebraPtr, AlgebraHom> quotient_algebra(const AlgebraPtr& a, const IdealBasis& ideal) {
  const Field& f = a->field();
  const Quotient q = quotient_basis(a->dim(), ideal.sub, f);
  std::vector<std::string> labels;
  for (std::size_t r : q.representatives) labels.push_back(a->label(r));
  Algebra out(f, labels);
  for (std::size_t x = 0; x < q.dim(); ++x)
    for (std::size_t y = 0; y < q.dim(); ++y)
      out.set_product(x, y, q.project(f, a->product(q.representatives[x], q.representatives[y])));
  if (a->unit()) {
    const SparseVector u = q.project(f, SparseVector::unit(*a->unit()));
    if (u.nnz() == 1 && u.entries[0].second == 1) out.set_unit(u.entries[0].first);
  }
  if (a->graded()) {
    std::vector<int> deg;
    for (std::size_t r : q.representatives) deg.push_back(a->degree(r));
    // the quotient of a graded algebra by a homogeneous ideal stays graded; keep degrees only if consistent
    out.set_degrees(deg);
    bool ok = true;
    for (std::size_t x = 0; x < q.dim() && ok; ++x)
      for (std::size_t y = 0; y < q.dim() && ok; ++y)
        for (const auto& e : out.product(x, y).entries)
          if (deg[e.first] != deg[x] + deg[y]) ok = false;
    if (!ok) out.set_degrees({});
  }
  AlgebraPtr qa = share(std::move(out));
  return {qa, AlgebraHom(a, qa, q.projection)};
}

/// Adjoins a formal unit, placed after the original basis.
inline AlgebraPtr unitalize(const Algebra& a) {
  std::vector<std::string> labels = a.labels();
  labels.push_back("1~");
  Algebra out(a.field(), labels);
  const std::size_t u = a.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out.set_product(i, j, a.product(i, j));
  for (std::size_t i = 0; i <= a.dim(); ++i) {
    out.set_product(u, i, SparseVector::unit(i));
    out.set_product(i, u, SparseVector::unit(i));
  }
  out.set_unit(u);
  return share(std::move(out));
}

/// Smallest n <= bound with the n-fold product space equal to zero.
inline std::optional<std::size_t> is_nilpotent(const Algebra& a, std::size_t bound) {
  const Subspace whole = Subspace::full(a.field(), a.dim());
  Subspace cur = whole;
  for (std::size_t n = 1; n <= bound; ++n) {
    if (cur.dim() == 0) return n;
    if (n == bound) break;
    cur = subspace_product(a, cur, whole);
  }
  return std::nullopt;
}

/// Nilpotency index of an ideal regarded as a non-unital algebra.
inline std::optional<std::size_t> is_nilpotent(const IdealBasis& i, std::size_t bound) {
  for (std::size_t n = 1; n <= bound; ++n) {
    if (ideal_power(i, n).dim() == 0) return n;
  }
  return std::nullopt;
}

/// Subalgebra generated by `gens`, as a standalone algebra with its inclusion.
inline std::pair<AlgebraPtr, AlgebraHom> subalgebra(const AlgebraPtr& a, const std::vector<SparseVector>& gens) {
  const Field& f = a->field();
  Echelon e(f, a->dim());
  std::vector<SparseVector> basis;
  for (const auto& g : gens)
    if (e.insert(g)) basis.push_back(g);
  for (std::size_t head = 0; head < basis.size(); ++head) {
    for (std::size_t k = 0; k <= head; ++k) {
      SparseVector p = a->mul(basis[head], basis[k]);
      if (e.insert(p)) basis.push_back(std::move(p));
      SparseVector r = a->mul(basis[k], basis[head]);
      if (e.insert(r)) basis.push_back(std::move(r));
    }
  }
  const SparseMatrix incl = SparseMatrix::from_columns(a->dim(), basis);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) labels.push_back("s" + std::to_string(i));
  Algebra out(f, labels);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = solve(incl, a->mul(basis[i], basis[j]), f);
      if (!c) throw ValidationError("subalgebra closure failed");
      out.set_product(i, j, *c);
    }
  if (a->unit()) {
    if (auto c = solve(incl, SparseVector::unit(*a->unit()), f); c && c->nnz() == 1 && c->entries[0].second == 1) {
      out.set_unit(c->entries[0].first);
    }
  }
  AlgebraPtr s = share(std::move(out));
  return {s, AlgebraHom(s, a, incl)};
}

/// A finite initial segment A_1 <- A_2 <- ... <- A_N of an inverse system.
/// maps[k] is the structure map stages[k+1] -> stages[k].
struct Tower {
  std::vector<AlgebraPtr> stages;
  std::vector<AlgebraHom> maps;

  std::size_t size() const { return stages.size(); }

  /// Composite structure map from stage `from` down to stage `to` (0-based, from >= to).
  AlgebraHom composite(std::size_t from, std::size_t to) const {
    AlgebraHom h = AlgebraHom::identity(stages.at(from));
    for (std::size_t k = from; k > to; --k) h = maps.at(k - 1).after(h);
    return h;
  }

  void validate() const {
    if (maps.size() + 1 != stages.size() && !stages.empty()) throw ValidationError("tower needs one map per consecutive pair");
    for (const auto& m : maps) {
      m.require_multiplicative();
      if (!m.surjective()) throw ValidationError("tower structure map is not surjective");
    }
  }
};

}  // namespace cqcalc
