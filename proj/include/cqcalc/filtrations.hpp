#pragma once

// Comparison of the filtrations <J^n> + I^n and <J>^n + I^n on an algebra
// B ⊃ A with a retraction ε: B -> A, I = ker ε and J an ideal of A.

#include "cqcalc/report.hpp"
#include "cqcalc/algebra.hpp"

namespace cqcalc {

namespace detail {

inline Subspace power_of(const Algebra& a, const Subspace& s, std::size_t n) {
  Subspace cur = s;
  for (std::size_t k = 1; k < n && cur.dim() > 0; ++k) cur = subspace_product(a, cur, s);
  return cur;
}

/// dim(u + w) - dim(w): zero iff u ⊆ w.
inline std::size_t excess(const Subspace& u, const Subspace& w) { return subspace_sum(u, w).dim() - w.dim(); }

}  // namespace detail

/// `inclusion`: A -> B, `retraction`: B -> A with ε∘inclusion = id, `j` an ideal of A.
inline VerificationReport lemma23_check(const AlgebraHom& inclusion, const AlgebraHom& retraction, const IdealBasis& j,
                                        std::size_t n) {
  if (n < 1) throw std::invalid_argument("lemma23_check needs n >= 1");
  const Field& f = inclusion.field();
  const AlgebraPtr& b = inclusion.target;
  if (!inclusion.multiplicative() || !retraction.multiplicative())
    throw NotARetraction("inclusion and retraction must be homomorphisms");
  if (!(retraction.matrix.compose(f, inclusion.matrix) == SparseMatrix::identity(inclusion.source->dim())))
    throw NotARetraction("ε does not restrict to the identity on the subalgebra");
  const Algebra& B = *b;
  const std::size_t N = n * n + n - 1;

  std::vector<SparseVector> jb;
  for (const auto& v : j.sub.basis()) jb.push_back(inclusion.matrix.apply(f, v));
  const Subspace jideal = ideal_closure(B, jb);  // <J>
  std::vector<SparseVector> jnb;
  const IdealBasis jn = ideal_power(j, n);
  for (const auto& v : jn.sub.basis()) jnb.push_back(inclusion.matrix.apply(f, v));
  const Subspace jn_ideal = ideal_closure(B, jnb);  // <J^n>
  const Subspace i = kernel_basis(retraction.matrix, f);
  const Subspace in = detail::power_of(B, i, n);

  const Subspace F = subspace_sum(jn_ideal, in);                        // 𝓕^n
  const Subspace G = subspace_sum(detail::power_of(B, jideal, n), in);  // 𝓖^n
  const Subspace jN = detail::power_of(B, jideal, N);
  const Subspace sum2n = detail::power_of(B, subspace_sum(jideal, i), 2 * n);

  VerificationReport rep;
  rep.lemma = "lemma23";
  rep.input("field", f.name());
  rep.input("b_dim", B.dim());
  rep.input("n", n);
  rep.input("N", N);
  // least M with <J>^M ⊆ 𝓕^n, for comparison with the bound N
  std::size_t least = 1;
  for (Subspace p = jideal; detail::excess(p, F) != 0 && least < N; ++least) p = subspace_product(B, p, jideal);
  rep.tables["least_exponent"] = {least};
  rep.tables["dims"] = {jideal.dim(), i.dim(), F.dim(), G.dim(), jN.dim(), sum2n.dim()};
  rep.check("J_power_N_in_F", detail::excess(jN, F));
  rep.check("F_in_G", detail::excess(F, G));
  rep.check("J_plus_I_power_2n_in_G", detail::excess(sum2n, G));
  return rep;
}

}  // namespace cqcalc
