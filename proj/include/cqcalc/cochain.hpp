#pragma once

// Hochschild cochains A^{⊗m} -> M stored on basis tuples, with the
// coboundary δ and the cup product.

#include <functional>
#include <vector>

#include "cqcalc/forms.hpp"

namespace cqcalc {

/// A vector space with commuting left and right actions of the basis of A.
struct Bimodule {
  Field field;
  std::size_t dim = 0;
  std::function<SparseVector(std::size_t, const SparseVector&)> left;
  std::function<SparseVector(const SparseVector&, std::size_t)> right;
};

/// Ω^n A with its natural A-bimodule structure.
inline Bimodule forms_bimodule(const Forms& om, std::size_t n) {
  Bimodule m;
  m.field = om.field();
  m.dim = om.dim(n);
  m.left = [&om, n](std::size_t a, const SparseVector& w) { return om.left(SparseVector::unit(a), n, w); };
  m.right = [&om, n](const SparseVector& w, std::size_t a) { return om.right(n, w, SparseVector::unit(a)); };
  return m;
}

/// An algebra B regarded as an A-bimodule through a homomorphism u: A -> B.
inline Bimodule bimodule_via(const AlgebraHom& u) {
  Bimodule m;
  m.field = u.field();
  m.dim = u.target->dim();
  m.left = [&u](std::size_t a, const SparseVector& x) { return u.target->mul(u.image(a), x); };
  m.right = [&u](const SparseVector& x, std::size_t a) { return u.target->mul(x, u.image(a)); };
  return m;
}

struct Cochain {
  std::size_t arity = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<SparseVector> values;  // indexed by the base-(source_dim) code of the argument tuple

  Cochain() = default;
  Cochain(std::size_t m, std::size_t d, std::size_t t)
      : arity(m), source_dim(d), target_dim(t), values(Forms::ipow(d, m)) {}

  std::size_t code(const std::vector<std::size_t>& tuple) const {
    std::size_t c = 0;
    for (std::size_t a : tuple) c = c * source_dim + a;
    return c;
  }

  std::vector<std::size_t> tuple(std::size_t c) const {
    std::vector<std::size_t> t(arity);
    for (std::size_t k = arity; k-- > 0;) {
      t[k] = c % source_dim;
      c /= source_dim;
    }
    return t;
  }

  const SparseVector& at(const std::vector<std::size_t>& t) const { return values.at(code(t)); }

  bool is_zero() const {
    for (const auto& v : values)
      if (!v.empty()) return false;
    return true;
  }

  /// A linear map regarded as a 1-cochain.
  static Cochain from_matrix(const SparseMatrix& m) {
    Cochain c(1, m.cols(), m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) c.values[j] = m.column(j);
    return c;
  }

  SparseMatrix as_matrix() const {
    if (arity != 1) throw std::logic_error("only 1-cochains are linear maps");
    return SparseMatrix::from_columns(target_dim, values);
  }
};

/// δc(a1..a_{m+1}) = a1·c(a2..) + Σ_i (-1)^i c(..a_i a_{i+1}..) + (-1)^{m+1} c(a1..a_m)·a_{m+1}
inline Cochain hochschild_delta(const Cochain& c, const Algebra& a, const Bimodule& m) {
  const std::size_t k = c.arity;
  Cochain out(k + 1, c.source_dim, c.target_dim);
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    const auto args = out.tuple(t);
    VecBuilder acc(m.field);
    std::vector<std::size_t> tail(args.begin() + 1, args.end());
    acc.add(m.left(args[0], c.at(tail)));
    for (std::size_t i = 1; i <= k; ++i) {
      const Scalar sign = (i % 2 == 0) ? Scalar(1) : Scalar(-1);
      for (const auto& [p, x] : a.product(args[i - 1], args[i]).entries) {
        std::vector<std::size_t> merged(args.begin(), args.begin() + (i - 1));
        merged.push_back(p);
        merged.insert(merged.end(), args.begin() + (i + 1), args.end());
        acc.add(c.at(merged), sign * x);
      }
    }
    std::vector<std::size_t> head(args.begin(), args.end() - 1);
    acc.add(m.right(c.at(head), args.back()), ((k + 1) % 2 == 0) ? Scalar(1) : Scalar(-1));
    out.values[t] = acc.take();
  }
  return out;
}

/// (c1 ∪ c2)(a1..a_{i+j}) = mult(c1(a1..a_i), c2(a_{i+1}..)).
inline Cochain cup(const Cochain& c1, const Cochain& c2, std::size_t target_dim,
                   const std::function<SparseVector(const SparseVector&, const SparseVector&)>& mult) {
  if (c1.source_dim != c2.source_dim) throw std::invalid_argument("cup of cochains on different algebras");
  Cochain out(c1.arity + c2.arity, c1.source_dim, target_dim);
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    const auto args = out.tuple(t);
    const std::vector<std::size_t> l(args.begin(), args.begin() + c1.arity), r(args.begin() + c1.arity, args.end());
    out.values[t] = mult(c1.at(l), c2.at(r));
  }
  return out;
}

inline Cochain cochain_sum(const Field& f, const Cochain& x, const Cochain& y, const Scalar& cy = Scalar(1)) {
  Cochain out = x;
  for (std::size_t t = 0; t < out.values.size(); ++t) out.values[t] = sum(f, x.values[t], y.values[t], cy);
  return out;
}

/// The de Rham differential d: A -> Ω^1 A as a 1-cochain.
inline Cochain d_cochain(const Forms& om) { return Cochain::from_matrix(om.d_matrix(0)); }

}  // namespace cqcalc
