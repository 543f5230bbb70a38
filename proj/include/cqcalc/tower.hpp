#pragma once

// Towers {A_n} of the built-in constructions with their structure maps.

#include "cqcalc/constructions.hpp"
#include "cqcalc/cylinder.hpp"

namespace cqcalc {

enum class Construction { Cylinder, UniversalModel, PowerAlgebra, FreeProduct };

struct TowerParams {
  std::size_t v_dim = 1;        // power algebra
  AlgebraPtr other;             // free product partner
  std::size_t word_bound = 0;   // 0 = per-stage default
};

/// Stages 1..N.  Every structure map is checked to be a surjective
/// homomorphism compatible with the canonical projections to stage 1.
inline Tower tower_of(Construction c, const AlgebraPtr& a, const TowerParams& params, std::size_t N) {
  Tower t;
  for (std::size_t n = 1; n <= N; ++n) {
    switch (c) {
      case Construction::Cylinder:
        t.stages.push_back(q_construction(a, n, params.word_bound).algebra);
        break;
      case Construction::UniversalModel:
        t.stages.push_back(universal_model_trunc(a, n, params.word_bound).algebra);
        break;
      case Construction::PowerAlgebra:
        t.stages.push_back(power_algebra_trunc(a, params.v_dim, n).algebra);
        break;
      case Construction::FreeProduct:
        t.stages.push_back(free_product_trunc(a, params.other ? params.other : a, n).algebra);
        break;
    }
    if (n >= 2) {
      // every construction orders its basis so that stage n-1 is an initial segment of stage n
      const AlgebraPtr& big = t.stages[n - 1];
      const AlgebraPtr& small = t.stages[n - 2];
      std::vector<SparseVector> cols(big->dim());
      for (std::size_t i = 0; i < small->dim(); ++i) cols[i] = SparseVector::unit(i);
      t.maps.emplace_back(big, small, SparseMatrix::from_columns(small->dim(), std::move(cols)));
    }
  }
  t.validate();
  return t;
}

}  // namespace cqcalc
