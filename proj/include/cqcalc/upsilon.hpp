#pragma once

// Dimensions of the coinvariant spaces C_n = (T^n V)_{Z/n} and
// D_{n,r} = (⊕ A ⊗ T^{i1}V ⊗ ... ⊗ A ⊗ T^{ir}V)_{Z/r}.  Both actions permute a
// basis, so the coinvariants have one basis vector per orbit in every
// characteristic; orbits are counted with Burnside's lemma.
//
// Index convention (fixed against the relative HN_1 tower of P_k(k) -> k):
// n >= 1, r >= 1 and every i_j >= 1.  Stage s of the tower sees n = 1..s-1.

#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace cqcalc {

struct UpsilonTable {
  std::size_t a_dim = 0, v_dim = 0, cut = 0;
  std::vector<mpz_class> C;               // C[n], n = 0..cut (C[0] = 0)
  std::vector<std::vector<mpz_class>> D;  // D[n][r], r = 0..n (D[n][0] = 0)

  mpz_class degree_total(std::size_t n) const {
    mpz_class t = C[n];
    for (const auto& x : D[n]) t += x;
    return t;
  }

  /// Dimension of the truncation seen by tower stage s (degrees 1..s-1).
  mpz_class stage_total(std::size_t s) const {
    mpz_class t = 0;
    for (std::size_t n = 1; n < s && n <= cut; ++n) t += degree_total(n);
    return t;
  }
};

namespace detail {

/// tuples[g][m] = number of g-tuples of letters of total weight m, where a
/// letter of weight w >= 1 comes in letter_count[w] kinds.
inline std::vector<std::vector<mpz_class>> weighted_tuples(const std::vector<mpz_class>& letter_count, std::size_t max_len,
                                                         std::size_t max_weight) {
  std::vector<std::vector<mpz_class>> t(max_len + 1, std::vector<mpz_class>(max_weight + 1, 0));
  t[0][0] = 1;
  for (std::size_t g = 1; g <= max_len; ++g)
    for (std::size_t m = 1; m <= max_weight; ++m)
      for (std::size_t w = 1; w <= m; ++w) t[g][m] += t[g - 1][m - w] * letter_count[w];
  return t;
}

}  // namespace detail

inline UpsilonTable upsilon(std::size_t a_dim, std::size_t v_dim, std::size_t cut) {
  UpsilonTable u{a_dim, v_dim, cut, std::vector<mpz_class>(cut + 1, 0), {}};
  u.D.assign(cut + 1, {});
  // C_n: words of length n up to rotation.
  for (std::size_t n = 1; n <= cut; ++n) {
    mpz_class fixed = 0;
    for (std::size_t s = 0; s < n; ++s) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), v_dim, std::gcd(s, n));
      fixed += p;
    }
    u.C[n] = fixed / n;
  }
  // D_{n,r}: r-tuples of letters (a, w), |w| >= 1, up to rotation.
  std::vector<mpz_class> letters(cut + 1, 0);
  for (std::size_t w = 1; w <= cut; ++w) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), v_dim, w);
    letters[w] = p * a_dim;
  }
  const auto tuples = detail::weighted_tuples(letters, cut, cut);
  for (std::size_t n = 1; n <= cut; ++n) {
    u.D[n].assign(n + 1, 0);
    for (std::size_t r = 1; r <= n; ++r) {
      mpz_class fixed = 0;
      for (std::size_t s = 0; s < r; ++s) {
        const std::size_t g = std::gcd(s, r), reps = r / g;
        if (n % reps == 0) fixed += tuples[g][n / reps];
      }
      u.D[n][r] = fixed / r;
    }
  }
  return u;
}

}  // namespace cqcalc
