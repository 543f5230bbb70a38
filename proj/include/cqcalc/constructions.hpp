#pragma once

// Truncated word-based constructions: tensor algebras T^{≤N}V, free
// products (A*B)^{≤L} and power algebras P_A(V)_n.

#include <map>
#include <string>
#include <vector>

#include "cqcalc/algebra.hpp"

namespace cqcalc {

/// Words of length 1..N over an alphabet of size `letters`, grouped by length,
/// lexicographic within a length.
struct WordIndex {
  std::size_t letters = 0;
  std::size_t max_len = 0;
  std::vector<std::size_t> offset;  // offset[len] = index of the first word of that length (len >= 1)

  WordIndex() = default;
  WordIndex(std::size_t k, std::size_t n) : letters(k), max_len(n), offset(n + 2, 0) {
    std::size_t total = 0, count = 1;
    for (std::size_t len = 1; len <= n; ++len) {
      offset[len] = total;
      count *= k;
      total += count;
    }
    offset[n + 1] = total;
  }

  std::size_t size() const { return offset[max_len + 1]; }

  std::size_t encode(const std::vector<std::size_t>& w) const {
    std::size_t code = 0;
    for (std::size_t c : w) code = code * letters + c;
    return offset[w.size()] + code;
  }

  std::vector<std::size_t> decode(std::size_t idx) const {
    std::size_t len = 1;
    while (idx >= offset[len + 1]) ++len;
    std::size_t code = idx - offset[len];
    std::vector<std::size_t> w(len);
    for (std::size_t k = len; k-- > 0;) {
      w[k] = code % letters;
      code /= letters;
    }
    return w;
  }
};

inline std::string word_label(const std::vector<std::size_t>& w, std::size_t letters) {
  if (letters == 1) return w.size() == 1 ? std::string("t") : "t^" + std::to_string(w.size());
  std::string s;
  for (std::size_t c : w) s += "v" + std::to_string(c + 1);
  return s;
}

/// T^{≤N}V: words of length 1..N with truncated concatenation, graded by length.
struct TensorAlgebra {
  AlgebraPtr algebra;
  WordIndex words;
};

inline TensorAlgebra tensor_algebra_trunc(std::size_t v_dim, std::size_t N, const Field& f) {
  if (N < 1) throw std::invalid_argument("tensor_algebra_trunc needs N >= 1");
  TensorAlgebra t;
  t.words = WordIndex(v_dim, N);
  std::vector<std::string> labels;
  std::vector<int> deg;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    const auto w = t.words.decode(i);
    labels.push_back(word_label(w, v_dim));
    deg.push_back(static_cast<int>(w.size()));
  }
  Algebra a(f, labels);
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    const auto wi = t.words.decode(i);
    for (std::size_t j = 0; j < t.words.size(); ++j) {
      const auto wj = t.words.decode(j);
      if (wi.size() + wj.size() > N) continue;
      auto w = wi;
      w.insert(w.end(), wj.begin(), wj.end());
      a.set_product(i, j, SparseVector::unit(t.words.encode(w)));
    }
  }
  a.set_degrees(deg);
  t.algebra = share(std::move(a));
  return t;
}

/// Alternating word in a free product: letters[k] is a basis index of factor
/// (first + k) % 2 (0 = A, 1 = B).
struct FPWord {
  int first = 0;
  std::vector<std::size_t> letters;

  int last() const { return (first + static_cast<int>(letters.size()) - 1) % 2; }
  int factor(std::size_t k) const { return (first + static_cast<int>(k)) % 2; }
  friend bool operator<(const FPWord& a, const FPWord& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    if (a.first != b.first) return a.first < b.first;
    return a.letters < b.letters;
  }
  friend bool operator==(const FPWord& a, const FPWord& b) { return a.first == b.first && a.letters == b.letters; }
};

/// Which of the six summands A, B, T(A⊗B), T(B⊗A), T(A⊗B)⊗A, T(B⊗A)⊗B a word belongs to.
enum class FPSummand { A, B, AB, BA, ABA, BAB };

inline FPSummand summand_of(const FPWord& w) {
  if (w.letters.size() == 1) return w.first == 0 ? FPSummand::A : FPSummand::B;
  if (w.first == 0) return w.last() == 1 ? FPSummand::AB : FPSummand::ABA;
  return w.last() == 0 ? FPSummand::BA : FPSummand::BAB;
}

struct FreeProduct {
  AlgebraPtr a, b;
  std::size_t L = 0;
  std::vector<FPWord> words;
  std::map<FPWord, std::size_t> index;
  AlgebraPtr algebra;
  AlgebraHom inc_a, inc_b;

  std::size_t length(std::size_t i) const { return words[i].letters.size(); }

  std::vector<std::size_t> summand(FPSummand s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words.size(); ++i)
      if (summand_of(words[i]) == s) out.push_back(i);
    return out;
  }

  /// Product of two words as a combination of words (ignoring truncation when L == 0).
  SparseVector multiply_words(const FPWord& x, const FPWord& y) const {
    VecBuilder acc(algebra->field());
    const std::size_t nx = x.letters.size();
    if (x.last() != y.first) {
      FPWord w = x;
      w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
      if (auto it = index.find(w); it != index.end()) acc.add(it->second, Scalar(1));
      return acc.take();
    }
    const Algebra& fac = x.last() == 0 ? *a : *b;
    for (const auto& [z, c] : fac.product(x.letters[nx - 1], y.letters[0]).entries) {
      FPWord w;
      w.first = x.first;
      w.letters.assign(x.letters.begin(), x.letters.end() - 1);
      w.letters.push_back(z);
      w.letters.insert(w.letters.end(), y.letters.begin() + 1, y.letters.end());
      if (auto it = index.find(w); it != index.end()) acc.add(it->second, c);
    }
    return acc.take();
  }
};

inline std::vector<FPWord> alternating_words(std::size_t da, std::size_t db, std::size_t L) {
  std::vector<FPWord> out;
  for (std::size_t len = 1; len <= L; ++len)
    for (int first = 0; first < 2; ++first) {
      std::vector<FPWord> cur{FPWord{first, {}}};
      for (std::size_t k = 0; k < len; ++k) {
        std::vector<FPWord> next;
        const std::size_t size = ((first + static_cast<int>(k)) % 2 == 0) ? da : db;
        for (const auto& w : cur)
          for (std::size_t c = 0; c < size; ++c) {
            FPWord x = w;
            x.letters.push_back(c);
            next.push_back(std::move(x));
          }
        cur = std::move(next);
      }
      out.insert(out.end(), cur.begin(), cur.end());
    }
  return out;
}

inline FreeProduct free_product_trunc(const AlgebraPtr& a, const AlgebraPtr& b, std::size_t L) {
  if (L < 1) throw std::invalid_argument("free_product_trunc needs L >= 1");
  if (!(a->field() == b->field())) throw ValidationError("free product factors over different fields");
  FreeProduct fp;
  fp.a = a;
  fp.b = b;
  fp.L = L;
  fp.words = alternating_words(a->dim(), b->dim(), L);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < fp.words.size(); ++i) {
    fp.index[fp.words[i]] = i;
    std::string s;
    for (std::size_t k = 0; k < fp.words[i].letters.size(); ++k) {
      if (k) s += "|";
      s += (fp.words[i].factor(k) == 0 ? a : b)->label(fp.words[i].letters[k]);
      s += fp.words[i].factor(k) == 0 ? "_A" : "_B";
    }
    labels.push_back(s);
  }
  Algebra alg(a->field(), labels);
  fp.algebra = share(alg);  // temporary, used by multiply_words for the field
  for (std::size_t i = 0; i < fp.words.size(); ++i)
    for (std::size_t j = 0; j < fp.words.size(); ++j) alg.set_product(i, j, fp.multiply_words(fp.words[i], fp.words[j]));
  fp.algebra = share(std::move(alg));
  std::vector<SparseVector> ca, cb;
  for (std::size_t i = 0; i < a->dim(); ++i) ca.push_back(SparseVector::unit(fp.index.at(FPWord{0, {i}})));
  for (std::size_t i = 0; i < b->dim(); ++i) cb.push_back(SparseVector::unit(fp.index.at(FPWord{1, {i}})));
  fp.inc_a = AlgebraHom(a, fp.algebra, SparseMatrix::from_columns(fp.algebra->dim(), ca));
  fp.inc_b = AlgebraHom(b, fp.algebra, SparseMatrix::from_columns(fp.algebra->dim(), cb));
  return fp;
}

/// Power algebra P_A(V) truncated at V-degree n: degree 0 is A, degree k >= 1
/// has basis ã0 v ã1 v ... v ãk (Ã slots, slot 0 = formal unit).
struct PowerAlgebra {
  AlgebraPtr base;
  std::size_t v_dim = 0;
  std::size_t n = 0;
  std::vector<std::size_t> offset;  // first index of each degree 0..n-1
  AlgebraPtr algebra;
  AlgebraHom inclusion;   // A -> P
  AlgebraHom retraction;  // P -> A

  struct Word {
    std::vector<std::size_t> slots;  // size k+1, entries in [0, d]
    std::vector<std::size_t> vs;     // size k
  };

  std::size_t degree_dim(std::size_t k) const {
    const std::size_t d = base->dim();
    if (k == 0) return d;
    std::size_t r = d + 1;
    for (std::size_t i = 0; i < k; ++i) r *= v_dim * (d + 1);
    return r;
  }

  std::size_t degree_of(std::size_t idx) const {
    std::size_t k = 0;
    while (k + 1 < offset.size() && idx >= offset[k + 1]) ++k;
    return k;
  }

  Word decode(std::size_t idx) const {
    const std::size_t k = degree_of(idx), d = base->dim();
    std::size_t code = idx - offset[k];
    Word w;
    if (k == 0) {
      w.slots = {code + 1};
      return w;
    }
    w.slots.assign(k + 1, 0);
    w.vs.assign(k, 0);
    for (std::size_t i = k; i-- > 0;) {
      w.slots[i + 1] = code % (d + 1);
      code /= d + 1;
      w.vs[i] = code % v_dim;
      code /= v_dim;
    }
    w.slots[0] = code;
    return w;
  }

  /// Index of a word, or nullopt if its degree is truncated away (or it is the bare unit).
  std::optional<std::size_t> encode(const Word& w) const {
    const std::size_t k = w.vs.size(), d = base->dim();
    if (k >= n) return std::nullopt;
    if (k == 0) {
      if (w.slots[0] == 0) return std::nullopt;
      return w.slots[0] - 1;
    }
    std::size_t code = w.slots[0];
    for (std::size_t i = 0; i < k; ++i) code = (code * v_dim + w.vs[i]) * (d + 1) + w.slots[i + 1];
    return offset[k] + code;
  }

  std::string label(std::size_t idx) const {
    const Word w = decode(idx);
    auto slot = [&](std::size_t s) { return s == 0 ? std::string("1~") : base->label(s - 1); };
    std::string out = slot(w.slots[0]);
    for (std::size_t i = 0; i < w.vs.size(); ++i)
      out += "*v" + std::to_string(w.vs[i] + 1) + "*" + slot(w.slots[i + 1]);
    return out;
  }
};

/// Product of two Ã slots as a combination of slots.
inline std::vector<std::pair<std::size_t, Scalar>> slot_product(const Algebra& a, std::size_t s, std::size_t t) {
  if (s == 0) return {{t, Scalar(1)}};
  if (t == 0) return {{s, Scalar(1)}};
  std::vector<std::pair<std::size_t, Scalar>> out;
  for (const auto& [k, c] : a.product(s - 1, t - 1).entries) out.emplace_back(k + 1, c);
  return out;
}

inline PowerAlgebra power_algebra_trunc(const AlgebraPtr& a, std::size_t v_dim, std::size_t n) {
  if (n < 1) throw std::invalid_argument("power_algebra_trunc needs n >= 1");
  PowerAlgebra p;
  p.base = a;
  p.v_dim = v_dim;
  p.n = n;
  std::size_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    p.offset.push_back(total);
    total += (k > 0 && v_dim == 0) ? 0 : p.degree_dim(k);
  }
  std::vector<std::string> labels;
  std::vector<int> deg;
  for (std::size_t i = 0; i < total; ++i) {
    labels.push_back(p.label(i));
    deg.push_back(static_cast<int>(p.degree_of(i)));
  }
  Algebra alg(a->field(), labels);
  for (std::size_t i = 0; i < total; ++i) {
    const auto x = p.decode(i);
    for (std::size_t j = 0; j < total; ++j) {
      const auto y = p.decode(j);
      if (x.vs.size() + y.vs.size() >= n) continue;
      VecBuilder acc(a->field());
      for (const auto& [s, c] : slot_product(*a, x.slots.back(), y.slots.front())) {
        PowerAlgebra::Word w;
        w.slots.assign(x.slots.begin(), x.slots.end() - 1);
        w.slots.push_back(s);
        w.slots.insert(w.slots.end(), y.slots.begin() + 1, y.slots.end());
        w.vs = x.vs;
        w.vs.insert(w.vs.end(), y.vs.begin(), y.vs.end());
        if (auto idx = p.encode(w)) acc.add(*idx, c);
      }
      alg.set_product(i, j, acc.take());
    }
  }
  alg.set_degrees(deg);
  if (a->unit() && n == 1) alg.set_unit(*a->unit());
  p.algebra = share(std::move(alg));
  std::vector<SparseVector> inc, ret(total);
  for (std::size_t i = 0; i < a->dim(); ++i) inc.push_back(SparseVector::unit(i));
  for (std::size_t i = 0; i < a->dim(); ++i) ret[i] = SparseVector::unit(i);
  p.inclusion = AlgebraHom(a, p.algebra, SparseMatrix::from_columns(total, inc));
  p.retraction = AlgebraHom(p.algebra, a, SparseMatrix::from_columns(a->dim(), ret));
  return p;
}

}  // namespace cqcalc
