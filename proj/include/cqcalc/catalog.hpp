#pragma once

// Small named algebras used throughout the tests, the CLI and the acceptance
// suite, plus a generator of random associative algebras.

#include <random>
#include <string>
#include <vector>

#include "cqcalc/algebra.hpp"

namespace cqcalc::catalog {

/// The ground field k with basis {e}, e*e = e.
inline AlgebraPtr ground(const Field& f) {
  Algebra a(f, {"e"});
  a.set_product(0, 0, SparseVector::unit(0));
  a.set_unit(0);
  return share(std::move(a));
}

/// k[x]/x^m with basis 1, x, ..., x^{m-1}.
inline AlgebraPtr truncated_poly(const Field& f, std::size_t m) {
  std::vector<std::string> labels{"1"};
  for (std::size_t i = 1; i < m; ++i) labels.push_back(i == 1 ? "x" : "x^" + std::to_string(i));
  Algebra a(f, labels);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; i + j < m; ++j) a.set_product(i, j, SparseVector::unit(i + j));
  a.set_unit(0);
  return share(std::move(a));
}

/// k[eps]/eps^2 with basis {1, eps}.
inline AlgebraPtr dual_numbers(const Field& f) {
  Algebra a(f, {"1", "eps"});
  a.set_product(0, 0, SparseVector::unit(0));
  a.set_product(0, 1, SparseVector::unit(1));
  a.set_product(1, 0, SparseVector::unit(1));
  a.set_unit(0);
  return share(std::move(a));
}

/// k x k with orthogonal idempotents e1, e2 (unit e1+e2 is not a basis vector).
inline AlgebraPtr product_kk(const Field& f) {
  Algebra a(f, {"e1", "e2"});
  a.set_product(0, 0, SparseVector::unit(0));
  a.set_product(1, 1, SparseVector::unit(1));
  return share(std::move(a));
}

/// Non-unital truncated polynomial algebra t k[t]/t^{m+1}, basis t, ..., t^m.
inline AlgebraPtr nonunital_poly(const Field& f, std::size_t m) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= m; ++i) labels.push_back(i == 1 ? "t" : "t^" + std::to_string(i));
  Algebra a(f, labels);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; i + j <= m; ++j) a.set_product(i - 1, j - 1, SparseVector::unit(i + j - 1));
  std::vector<int> deg;
  for (std::size_t i = 1; i <= m; ++i) deg.push_back(static_cast<int>(i));
  a.set_degrees(deg);
  return share(std::move(a));
}

/// Zero-multiplication algebra of the given dimension.
inline AlgebraPtr zero_product(const Field& f, std::size_t d) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("z" + std::to_string(i));
  return share(Algebra(f, labels));
}

/// Full matrix algebra M_n(k), basis of matrix units E_ij (index i*n + j).
inline AlgebraPtr matrices(const Field& f, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  Algebra a(f, labels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) a.set_product(i * n + j, j * n + l, SparseVector::unit(i * n + l));
  return share(std::move(a));
}

/// Upper-triangular n x n matrices (strict = true drops the diagonal).
inline AlgebraPtr upper_triangular(const Field& f, std::size_t n, bool strict = false) {
  std::vector<std::pair<std::size_t, std::size_t>> units;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = strict ? i + 1 : i; j < n; ++j) units.emplace_back(i, j);
  std::vector<std::string> labels;
  for (auto [i, j] : units) labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  Algebra a(f, labels);
  for (std::size_t x = 0; x < units.size(); ++x)
    for (std::size_t y = 0; y < units.size(); ++y) {
      if (units[x].second != units[y].first) continue;
      const std::pair<std::size_t, std::size_t> p{units[x].first, units[y].second};
      for (std::size_t z = 0; z < units.size(); ++z)
        if (units[z] == p) a.set_product(x, y, SparseVector::unit(z));
    }
  return share(std::move(a));
}

/// Pulls the structure constants back along an invertible change of basis
/// (columns of `p` express the new basis in the old one).
inline AlgebraPtr change_basis(const Algebra& a, const SparseMatrix& p) {
  const Field& f = a.field();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < a.dim(); ++i) labels.push_back("b" + std::to_string(i));
  Algebra out(f, labels);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      auto c = solve(p, a.mul(p.column(i), p.column(j)), f);
      if (!c) throw ValidationError("change of basis is not invertible");
      out.set_product(i, j, *c);
    }
  return share(std::move(out));
}

/// Random associative algebra of dimension 1..max_dim: the subalgebra of a
/// small matrix algebra generated by random matrices, in a random basis.
inline AlgebraPtr random_algebra(const Field& f, std::mt19937_64& rng, std::size_t max_dim = 3) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (;;) {
    const bool tri = rng() % 2 == 0;
    const AlgebraPtr m = tri ? upper_triangular(f, 3, rng() % 3 == 0) : matrices(f, 2);
    std::vector<SparseVector> gens(1 + rng() % 2);
    for (auto& g : gens) {
      VecBuilder b(f);
      for (std::size_t i = 0; i < m->dim(); ++i)
        if (rng() % 3 == 0) b.add(i, Scalar(coeff(rng)));
      g = b.take();
    }
    auto [s, incl] = subalgebra(m, gens);
    if (s->dim() == 0 || s->dim() > max_dim) continue;
    // random unitriangular change of basis keeps invertibility in every characteristic
    const std::size_t d = s->dim();
    std::vector<SparseVector> cols(d);
    for (std::size_t j = 0; j < d; ++j) {
      VecBuilder b(f);
      b.add(j, Scalar(1));
      for (std::size_t i = 0; i < j; ++i) b.add(i, Scalar(coeff(rng)));
      cols[j] = b.take();
    }
    return change_basis(*s, SparseMatrix::from_columns(d, std::move(cols)));
  }
}

}  // namespace cqcalc::catalog
