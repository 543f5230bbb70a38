#pragma once

// Relative X-homology and relative HN of the projection P_A(V) -> A, stage by
// stage, together with the images of the top stage in the lower ones.

#include "cqcalc/catalog.hpp"
#include "cqcalc/report.hpp"
#include "cqcalc/spans.hpp"
#include "cqcalc/tower.hpp"
#include "cqcalc/upsilon.hpp"
#include "cqcalc/mixed.hpp"

namespace cqcalc {

/// Cones of X(P_A(V)_n) -> X(A) for n = 1..N and the maps between consecutive cones.
struct RelativeTower {
  Field field;
  std::vector<MixedChainMap> projections;  // projections[n-1]: X(P_n) -> X(A)
  std::vector<MixedChainMap> cone_maps;    // cone_maps[n-1]: cone_{n+1} -> cone_n
};

inline RelativeTower relative_power_tower(const AlgebraPtr& a, std::size_t v_dim, std::size_t N) {
  TowerParams tp;
  tp.v_dim = v_dim;
  const Tower t = tower_of(Construction::PowerAlgebra, a, tp, N);
  RelativeTower r{a->field(), {}, {}};
  for (std::size_t n = 1; n <= N; ++n) r.projections.push_back(theta_mixed_map(power_algebra_trunc(a, v_dim, n).retraction, 1));
  const MixedChainMap id = theta_mixed_map(AlgebraHom::identity(a), 1);
  for (std::size_t n = 1; n < N; ++n)
    r.cone_maps.push_back(cone_morphism(r.projections[n], r.projections[n - 1], theta_mixed_map(t.maps[n - 1], 1), id));
  return r;
}

namespace detail {

inline std::vector<std::size_t> sizes_of(const std::vector<mpz_class>& v) {
  std::vector<std::size_t> out;
  for (const auto& x : v) out.push_back(x.get_ui());
  return out;
}

}  // namespace detail

/// Relative HN_1 against Υ with the stored convention.  The tower is built to
/// stages + depth; "stable" dims are images of the top stage.
inline VerificationReport prop68_crosscheck(const AlgebraPtr& a, std::size_t v_dim, std::size_t stages, std::size_t depth = 1) {
  if (!find_connection(a)) throw NotQuasiFree("the base algebra has no connection");
  VerificationReport rep;
  rep.lemma = "prop68";
  rep.input("field", a->field().name());
  rep.input("a_dim", a->dim());
  rep.input("v_dim", v_dim);
  rep.input("stages", stages);
  const std::size_t N = stages + depth;
  const RelativeTower rt = relative_power_tower(a, v_dim, N);
  const Field& f = rt.field;

  std::vector<std::size_t> raw1, raw2, raw3;
  for (const auto& m : rt.projections) {
    raw1.push_back(relative_hn(m, 1));
    raw2.push_back(relative_hn(m, 2));
    raw3.push_back(relative_hn(m, 3));
  }
  std::vector<SparseMatrix> maps;
  for (const auto& c : rt.cone_maps) maps.push_back(hn_map(c, 2));
  const TowerLimits tl = tower_limits(f, raw1, maps);

  // Image tower W_n = Im(V_N -> V_n) with the maps induced by σ_n.
  std::size_t non_surjective = 0;
  for (std::size_t n = 0; n + 1 < stages; ++n) {
    SparseMatrix comp = SparseMatrix::identity(raw1[n + 1]);
    for (std::size_t m = n + 1; m + 1 < N; ++m) comp = comp.compose(f, maps[m]);
    if (rank(maps[n].compose(f, comp), f) != tl.lim_dims[n]) ++non_surjective;
  }

  const UpsilonTable u = upsilon(a->dim(), v_dim, stages);
  std::vector<std::size_t> expected, stable;
  std::size_t mismatch = 0, zeros2 = 0, zeros3 = 0;
  for (std::size_t s = 1; s <= stages; ++s) {
    expected.push_back(u.stage_total(s).get_ui());
    stable.push_back(tl.lim_dims[s - 1]);
    mismatch += detail::abs_diff(expected.back(), stable.back());
    zeros2 += raw2[s - 1];
    zeros3 += raw3[s - 1];
  }
  raw1.resize(stages);
  raw2.resize(stages);
  raw3.resize(stages);
  std::vector<std::size_t> raw_surj;
  for (std::size_t n = 0; n + 1 < stages; ++n) raw_surj.push_back(tl.surjective[n] ? 1 : 0);
  rep.tables["hn1_raw"] = raw1;
  rep.tables["hn1_stable"] = stable;
  rep.tables["upsilon_truncation"] = expected;
  rep.tables["hn2"] = raw2;
  rep.tables["hn3"] = raw3;
  rep.tables["hn1_raw_map_surjective"] = raw_surj;
  rep.tables["upsilon_C"] = detail::sizes_of(u.C);
  rep.check("hn1_stable_equals_upsilon", mismatch);
  rep.check("hn2_zero", zeros2);
  rep.check("hn3_zero", zeros3);
  rep.check("stable_hn1_maps_surjective", non_surjective);
  return rep;
}

/// Images of the top-stage relative super homology in stages 1..stages.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stable_relative_x_homology(const AlgebraPtr& a,
                                                                                              std::size_t v_dim,
                                                                                              std::size_t stages) {
  const RelativeTower rt = relative_power_tower(a, v_dim, stages + 1);
  std::vector<std::size_t> de, dod;
  std::vector<SparseMatrix> me, mo;
  for (const auto& m : rt.projections) {
    const auto h = homology_super(total_super(mixed_cone(m)));
    de.push_back(h.first);
    dod.push_back(h.second);
  }
  for (const auto& c : rt.cone_maps) {
    const auto hm = total_super_map(c).on_homology();
    me.push_back(hm.first);
    mo.push_back(hm.second);
  }
  auto even = tower_limits(rt.field, de, me).lim_dims, odd = tower_limits(rt.field, dod, mo).lim_dims;
  even.resize(stages);
  odd.resize(stages);
  return {even, odd};
}

/// Over Q the stable relative X-homology of P_k(V) -> k vanishes; over F_p it does not.
inline VerificationReport remark55_check(std::uint64_t p, std::size_t v_dim, std::size_t stages) {
  VerificationReport rep;
  rep.lemma = "remark55";
  rep.input("p", std::to_string(p));
  rep.input("v_dim", v_dim);
  rep.input("stages", stages);
  std::size_t total_q = 0, total_p = 0;
  for (const Field& f : {Field::rationals(), Field::prime(p)}) {
    const auto [even, odd] = stable_relative_x_homology(catalog::ground(f), v_dim, stages);
    const std::string tag = f.characteristic() == 0 ? "Q" : "Fp";
    rep.tables["stable_even_" + tag] = even;
    rep.tables["stable_odd_" + tag] = odd;
    std::size_t t = 0;
    for (std::size_t i = 0; i < stages; ++i) t += even[i] + odd[i];
    (f.characteristic() == 0 ? total_q : total_p) = t;
  }
  rep.check("vanishes_over_Q", total_q);
  rep.check("nonzero_over_Fp", total_p > 0);
  return rep;
}

}  // namespace cqcalc
