#pragma once

// Operator identities d² = 0, b² = 0, B² = 0 and bd + db = 1 − κ on random
// structure-constant algebras, counted basis vector by basis vector.

#include <random>

#include "cqcalc/catalog.hpp"
#include "cqcalc/forms.hpp"
#include "cqcalc/report.hpp"

namespace cqcalc {

inline VerificationReport operator_identities(const Field& f, std::uint64_t seed, std::size_t samples, std::size_t max_degree,
                                              std::size_t max_dim = 3) {
  VerificationReport r;
  r.lemma = "operators";
  r.input("field", f.name());
  r.input("seed", std::to_string(seed));
  r.input("samples", samples);
  r.input("max_degree", max_degree);
  std::mt19937_64 rng(seed);
  std::size_t d2 = 0, b2 = 0, B2 = 0, karoubi = 0, tested = 0;
  std::vector<std::size_t> dims;
  for (std::size_t s = 0; s < samples; ++s) {
    const Forms om(catalog::random_algebra(f, rng, max_dim));
    dims.push_back(om.alg().dim());
    for (std::size_t n = 0; n <= max_degree; ++n)
      for (std::size_t i = 0; i < om.dim(n); ++i) {
        const SparseVector w = SparseVector::unit(i);
        ++tested;
        d2 += !om.d(n + 1, om.d(n, w)).empty();
        if (n >= 2) b2 += !om.b(n - 1, om.b(n, w)).empty();
        B2 += !om.connes_B(n + 1, om.connes_B(n, w)).empty();
        if (n >= 1) {
          VecBuilder lhs(f);
          lhs.add(om.b(n + 1, om.d(n, w)));
          lhs.add(om.d(n - 1, om.b(n, w)));
          lhs.add(w, Scalar(-1));
          lhs.add(om.kappa(n, w));
          karoubi += !lhs.take().empty();
        }
      }
  }
  r.tables["algebra_dims"] = dims;
  r.tables["basis_vectors_tested"] = {tested};
  r.check("d_squared", d2);
  r.check("b_squared", b2);
  r.check("B_squared", B2);
  r.check("bd_plus_db_is_one_minus_kappa", karoubi);
  return r;
}

}  // namespace cqcalc
