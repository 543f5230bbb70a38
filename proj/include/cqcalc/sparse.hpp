#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cqcalc/field.hpp"

namespace cqcalc {

/// Sparse vector with entries sorted by index and no stored zeros.
struct SparseVector {
  using Entry = std::pair<std::size_t, Scalar>;
  std::vector<Entry> entries;

  SparseVector() = default;

  static SparseVector unit(std::size_t i) {
    SparseVector v;
    v.entries.emplace_back(i, Scalar(1));
    return v;
  }

  bool empty() const { return entries.empty(); }
  std::size_t nnz() const { return entries.size(); }

  Scalar at(std::size_t i) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries.end() && it->first == i) return it->second;
    return Scalar(0);
  }

  std::size_t max_index_bound() const { return entries.empty() ? 0 : entries.back().first + 1; }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.entries == b.entries;
  }
};

/// Accumulates a linear combination; `take` drops zeros and returns the sorted vector.
class VecBuilder {
 public:
  explicit VecBuilder(const Field& f) : field_(&f) {}

  void add(std::size_t i, const Scalar& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = acc_.try_emplace(i, c);
    if (!inserted) it->second += c;
  }

  void add(const SparseVector& v, const Scalar& c = Scalar(1)) {
    if (sgn(c) == 0) return;
    for (const auto& [i, x] : v.entries) add(i, x * c);
  }

  void add_shifted(const SparseVector& v, std::size_t offset, const Scalar& c = Scalar(1)) {
    if (sgn(c) == 0) return;
    for (const auto& [i, x] : v.entries) add(i + offset, x * c);
  }

  SparseVector take() {
    SparseVector out;
    out.entries.reserve(acc_.size());
    for (auto& [i, x] : acc_) {
      Scalar r = field_->reduce(x);
      if (sgn(r) != 0) out.entries.emplace_back(i, std::move(r));
    }
    acc_.clear();
    return out;
  }

 private:
  const Field* field_;
  std::map<std::size_t, Scalar> acc_;
};

inline SparseVector scaled(const Field& f, const SparseVector& v, const Scalar& c) {
  VecBuilder b(f);
  b.add(v, c);
  return b.take();
}

inline SparseVector sum(const Field& f, const SparseVector& a, const SparseVector& b,
                        const Scalar& cb = Scalar(1)) {
  VecBuilder acc(f);
  acc.add(a);
  acc.add(b, cb);
  return acc.take();
}

inline SparseVector difference(const Field& f, const SparseVector& a, const SparseVector& b) {
  return sum(f, a, b, Scalar(-1));
}

/// Sparse linear map stored by columns: column j is the image of basis vector j.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVector::unit(i);
    return m;
  }

  static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVector> cols) {
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols.size();
    m.columns_ = std::move(cols);
    for (const auto& c : m.columns_) {
      if (c.max_index_bound() > rows) throw std::out_of_range("matrix entry row out of range");
    }
    return m;
  }

  /// Dense row-major input, reduced into the field.
  static SparseMatrix from_dense(const Field& f, const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    SparseMatrix m(r, c);
    for (std::size_t j = 0; j < c; ++j) {
      VecBuilder b(f);
      for (std::size_t i = 0; i < r; ++i) b.add(i, rows[i].at(j));
      m.columns_[j] = b.take();
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const SparseVector& column(std::size_t j) const { return columns_.at(j); }
  void set_column(std::size_t j, SparseVector v) {
    if (v.max_index_bound() > rows_) throw std::out_of_range("column entry out of range");
    columns_.at(j) = std::move(v);
  }
  const std::vector<SparseVector>& columns() const { return columns_; }

  Scalar at(std::size_t i, std::size_t j) const { return columns_.at(j).at(i); }

  SparseVector apply(const Field& f, const SparseVector& x) const {
    VecBuilder b(f);
    for (const auto& [j, c] : x.entries) b.add(columns_.at(j), c);
    return b.take();
  }

  /// this * other
  SparseMatrix compose(const Field& f, const SparseMatrix& other) const {
    if (other.rows_ != cols_) throw std::invalid_argument("dimension mismatch in compose");
    SparseMatrix out(rows_, other.cols_);
    for (std::size_t j = 0; j < other.cols_; ++j) out.columns_[j] = apply(f, other.columns_[j]);
    return out;
  }

  SparseMatrix transpose() const {
    std::vector<std::vector<SparseVector::Entry>> r(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      for (const auto& [i, c] : columns_[j].entries) r[i].emplace_back(j, c);
    }
    SparseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) t.columns_[i].entries = std::move(r[i]);
    return t;
  }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(),
                       [](const SparseVector& c) { return c.empty(); });
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> columns_;
};

inline SparseMatrix matrix_sum(const Field& f, const SparseMatrix& a, const SparseMatrix& b,
                               const Scalar& cb = Scalar(1)) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("dimension mismatch in matrix_sum");
  }
  SparseMatrix out(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) out.set_column(j, sum(f, a.column(j), b.column(j), cb));
  return out;
}

}  // namespace cqcalc
