#pragma once

// The word-length <= L piece of X(A*B).  Neither b nor ♮d raises word length,
// so this is a subcomplex and identities checked on it hold exactly.
//
//   X0 = alternating words of length 1..L  (length 1: A ⊕ B)
//   X1 = Ω¹_♮A ⊕ Ω¹_♮B ⊕ {alternating words of length 2..L}
//
// An X1 word z0...zk stands for the class of (z0...z(k-1)) dzk; these classes
// form a basis of the complement of Ω¹_♮A ⊕ Ω¹_♮B.

#include <map>

#include "cqcalc/complexes.hpp"
#include "cqcalc/constructions.hpp"
#include "cqcalc/forms.hpp"

namespace cqcalc {

using WordSum = std::vector<std::pair<FPWord, Scalar>>;

struct FreeXModel {
  AlgebraPtr a, b;
  std::size_t L = 0;
  std::vector<FPWord> words;  // X0 basis
  std::map<FPWord, std::size_t> index;
  Quotient nat_a, nat_b;      // Ω¹_♮ of the factors
  std::vector<long> x1_word;  // word index -> X1 index (-1 for length 1)
  std::size_t x1_dim = 0;
  SuperComplex complex;       // d_eo = ♮d, d_oe = b

  const Field& field() const { return a->field(); }
  const Algebra& factor(int i) const { return i == 0 ? *a : *b; }
  std::size_t x0_dim() const { return words.size(); }
  std::size_t nat_offset(int i) const { return i == 0 ? 0 : nat_a.dim(); }

  /// x * y in A*B; the empty word acts as a unit.
  WordSum product(const FPWord& x, const FPWord& y) const {
    if (x.letters.empty()) return {{y, Scalar(1)}};
    if (y.letters.empty()) return {{x, Scalar(1)}};
    if (x.last() != y.first) {
      FPWord w = x;
      w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
      return {{w, Scalar(1)}};
    }
    WordSum out;
    for (const auto& [z, c] : factor(y.first).product(x.letters.back(), y.letters.front()).entries) {
      FPWord w{x.first, {x.letters.begin(), x.letters.end() - 1}};
      w.letters.push_back(z);
      w.letters.insert(w.letters.end(), y.letters.begin() + 1, y.letters.end());
      if (w.letters.size() == 1) w.first = y.first;
      out.emplace_back(std::move(w), c);
    }
    return out;
  }

  std::size_t word_index(const FPWord& w) const {
    const auto it = index.find(w);
    if (it == index.end()) throw TruncationTooSmall("word longer than the length bound");
    return it->second;
  }

  void add_x0(VecBuilder& acc, const WordSum& s, const Scalar& c = Scalar(1)) const {
    for (const auto& [w, x] : s) acc.add(word_index(w), x * c);
  }

  /// Class of w dz in X1, where z is letter `z` of factor `fz`.
  void add_form(VecBuilder& acc, const FPWord& w, int fz, std::size_t z, const Scalar& c) const {
    if (sgn(c) == 0) return;
    const std::size_t n = w.letters.size();
    if (n == 0 || (n == 1 && w.first == fz)) {
      const Forms om(fz == 0 ? a : b);
      const std::optional<std::size_t> lead = n == 0 ? std::nullopt : std::optional<std::size_t>(w.letters[0]);
      const Quotient& q = fz == 0 ? nat_a : nat_b;
      acc.add_shifted(q.project(field(), SparseVector::unit(om.index(lead, {z}))), nat_offset(fz), c);
      return;
    }
    if (w.last() != fz) {
      FPWord full = w;
      full.letters.push_back(z);
      acc.add(static_cast<std::size_t>(x1_word[word_index(full)]), c);
      return;
    }
    // w = w' x with x in the factor of z:  w' x dz = w' d(xz) - (z w') dx  modulo commutators
    const FPWord head{w.first, {w.letters.begin(), w.letters.end() - 1}};
    const std::size_t x = w.letters.back();
    for (const auto& [y, k] : factor(fz).product(x, z).entries) add_form(acc, head, fz, y, c * k);
    for (const auto& [v, k] : product(FPWord{fz, {z}}, head)) add_form(acc, v, fz, x, -c * k);
  }
};

inline FreeXModel free_x_model(const AlgebraPtr& a, const AlgebraPtr& b, std::size_t L) {
  if (L < 2) throw TruncationTooSmall("the free product model needs word length bound >= 2");
  if (!(a->field() == b->field())) throw ValidationError("free product factors over different fields");
  FreeXModel m;
  m.a = a;
  m.b = b;
  m.L = L;
  m.words = alternating_words(a->dim(), b->dim(), L);
  for (std::size_t i = 0; i < m.words.size(); ++i) m.index[m.words[i]] = i;
  m.nat_a = Forms(a).natural_quotient(1);
  m.nat_b = Forms(b).natural_quotient(1);
  m.x1_dim = m.nat_a.dim() + m.nat_b.dim();
  m.x1_word.assign(m.words.size(), -1);
  for (std::size_t i = 0; i < m.words.size(); ++i)
    if (m.words[i].letters.size() >= 2) m.x1_word[i] = static_cast<long>(m.x1_dim++);
  const Field& f = m.field();

  std::vector<SparseVector> dcols, bcols(m.x1_dim);
  for (const FPWord& z : m.words) {
    VecBuilder acc(f);
    const std::size_t k = z.letters.size();
    for (std::size_t i = 0; i < k; ++i) {  // ♮d(z) = Σ (z(i+1)...z(k-1) z0...z(i-1)) dzi
      const FPWord tail{z.factor((i + 1) % k), {z.letters.begin() + static_cast<long>(i) + 1, z.letters.end()}};
      const FPWord front{z.first, {z.letters.begin(), z.letters.begin() + static_cast<long>(i)}};
      for (const auto& [w, c] : m.product(tail, front)) m.add_form(acc, w, z.factor(i), z.letters[i], c);
    }
    dcols.push_back(acc.take());
  }
  for (int fi = 0; fi < 2; ++fi) {
    const Forms om(fi == 0 ? a : b);
    const Quotient& q = fi == 0 ? m.nat_a : m.nat_b;
    for (std::size_t j = 0; j < q.dim(); ++j) {
      VecBuilder acc(f);
      for (const auto& [i, c] : om.b(1, q.lift(j)).entries) acc.add(m.word_index(FPWord{fi, {i}}), c);
      bcols[m.nat_offset(fi) + j] = acc.take();
    }
  }
  for (std::size_t i = 0; i < m.words.size(); ++i) {
    if (m.x1_word[i] < 0) continue;
    const FPWord& z = m.words[i];
    const FPWord head{z.first, {z.letters.begin(), z.letters.end() - 1}};
    VecBuilder acc(f);
    acc.add(i, Scalar(1));
    m.add_x0(acc, m.product(FPWord{z.last(), {z.letters.back()}}, head), Scalar(-1));  // b(w dz) = wz - zw
    bcols[static_cast<std::size_t>(m.x1_word[i])] = acc.take();
  }
  m.complex = SuperComplex(f, SparseMatrix::from_columns(m.x1_dim, dcols), SparseMatrix::from_columns(m.words.size(), bcols));
  return m;
}

}  // namespace cqcalc
