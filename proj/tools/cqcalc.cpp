// cqcalc: load algebras, run constructions and verifications, print reports.
//
// Exit status: 0 all checks pass, 1 some check fails, 2 invalid input,
// 3 a truncation bound is too small.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "cqcalc/catalog.hpp"
#include "cqcalc/complexes.hpp"
#include "cqcalc/degrees.hpp"
#include "cqcalc/filtrations.hpp"
#include "cqcalc/homotopy.hpp"
#include "cqcalc/identities.hpp"
#include "cqcalc/io.hpp"
#include "cqcalc/relative.hpp"
#include "cqcalc/splitting.hpp"
#include "cqcalc/tower.hpp"
#include "cqcalc/upsilon.hpp"

using namespace cqcalc;
using io::json;

namespace {

struct Options {
  std::string field = "Q";
  std::optional<std::size_t> stage, L, v_dim, a_dim, p;
  std::uint64_t seed = 0;
  bool json = false;
  std::string alg, a, b, file, what;
  std::vector<std::size_t> gens;
};

std::string field_used;  // field of the last algebra loaded

/// Built-in names (k, kxk, dual, trunc:<m>, mat:<n>) or a path to an algebra file.
AlgebraPtr resolve_named(const std::string& name, const Field& f, bool field_given) {
  if (name.empty()) throw ValidationError("no algebra given");
  if (name == "k") return catalog::ground(f);
  if (name == "kxk") return catalog::product_kk(f);
  if (name == "dual") return catalog::dual_numbers(f);
  auto suffix = [&](const std::string& head) -> std::optional<std::size_t> {
    if (name.rfind(head, 0) != 0) return std::nullopt;
    try {
      return std::stoul(name.substr(head.size()));
    } catch (const std::exception&) {
      throw ValidationError("malformed built-in algebra '" + name + "'");
    }
  };
  if (auto m = suffix("trunc:")) return catalog::truncated_poly(f, *m);
  if (auto n = suffix("mat:")) return catalog::matrices(f, *n);
  return io::load_algebra(name, field_given ? std::optional<Field>(f) : std::nullopt);
}

AlgebraPtr resolve(const std::string& name, const Field& f, bool field_given) {
  AlgebraPtr a = resolve_named(name, f, field_given);
  field_used = a->field().name();
  return a;
}

std::size_t need(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw ValidationError(std::string("missing required flag ") + flag);
  return *v;
}

json pair_json(std::pair<std::size_t, std::size_t> h) { return json{{"even", h.first}, {"odd", h.second}}; }

/// Human-readable form: one line per top-level key, tables one per line.
void print_human(const json& out, double seconds) {
  for (const auto& [k, v] : out.items()) {
    if (k == "tables" || k == "checks") continue;
    std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  if (out.contains("tables"))
    for (const auto& [k, v] : out["tables"].items()) std::cout << "  " << k << " = " << v.dump() << "\n";
  if (out.contains("checks"))
    for (const auto& c : out["checks"])
      std::cout << "  [" << (c["residual"] == 0 ? "ok" : "FAIL") << "] " << c["name"].get<std::string>()
                << " (residual " << c["residual"] << ")\n";
  std::cout << "time: " << seconds << " s\n";
}

}  // namespace

namespace verbs {

VerificationReport check(const Options& o, const Field& f, bool fg) {
  const AlgebraPtr a = resolve(o.file, f, fg);  // throws with the failing triple if not associative
  VerificationReport r;
  r.lemma = "check";
  r.input("algebra", o.file);
  r.tables["dim"] = {a->dim()};
  r.tables["unital"] = {a->unit() ? 1u : 0u};
  r.tables["connection_found"] = {find_connection(a) ? 1u : 0u};
  r.check("associative", true);
  return r;
}

VerificationReport homology(const Options& o, const Field& f, bool fg) {
  const AlgebraPtr a = resolve(o.alg, f, fg);
  VerificationReport r;
  r.lemma = "homology";
  r.input("complex", o.what);
  r.input("algebra", o.alg);
  if (o.what == "x" || o.what == "theta") {
    const std::size_t n = o.what == "x" ? 1 : need(o.stage, "--stage");
    r.input("stage", n);
    const SuperComplex c = theta_omega_stage(a, n);  // validates the square of the differential
    const auto h = homology_super(c);
    r.tables["chain_dims"] = {c.even_dim, c.odd_dim};
    r.tables["homology"] = {h.first, h.second};
  } else if (o.what == "hn") {
    const std::size_t n = need(o.stage, "--stage");
    r.input("stage", n);
    const MixedComplex m = theta_mixed(a, n);
    std::vector<std::size_t> hn;
    for (long k = 0; k <= static_cast<long>(n); ++k) hn.push_back(hn_of_mixed(m, k));
    r.tables["hn"] = hn;
  } else {
    throw ValidationError("unknown complex '" + o.what + "' (expected x, theta or hn)");
  }
  return r;
}

VerificationReport tower(const Options& o, const Field& f, bool fg) {
  static const std::map<std::string, Construction> kinds{{"cylinder", Construction::Cylinder},
                                                          {"universal", Construction::UniversalModel},
                                                          {"power", Construction::PowerAlgebra},
                                                          {"free", Construction::FreeProduct}};
  const auto it = kinds.find(o.what);
  if (it == kinds.end()) throw ValidationError("unknown tower '" + o.what + "' (expected cylinder, universal, power or free)");
  const AlgebraPtr a = resolve(o.alg, f, fg);
  const std::size_t N = need(o.stage, "--stage");
  TowerParams params;
  params.v_dim = o.v_dim.value_or(1);
  params.word_bound = o.L.value_or(0);
  VerificationReport r;
  r.lemma = "tower";
  r.input("construction", o.what);
  r.input("algebra", o.alg);
  r.input("stage", N);
  const Tower t = tower_of(it->second, a, params, N);  // checks every structure map
  std::vector<std::size_t> dims, even, odd;
  for (const auto& s : t.stages) {
    dims.push_back(s->dim());
    const auto h = homology_super(x_complex(s));
    even.push_back(h.first);
    odd.push_back(h.second);
  }
  r.tables["algebra_dims"] = dims;
  r.tables["x_homology_even"] = even;
  r.tables["x_homology_odd"] = odd;
  r.check("structure_maps_surjective_homomorphisms", true);
  return r;
}

VerificationReport verify(const Options& o, const Field& f, bool fg) {
  const std::string& w = o.what;
  if (w == "operators") return operator_identities(f, o.seed, 50, o.stage.value_or(4));
  if (w == "lemma23") {
    const AlgebraPtr a = resolve(o.alg, f, fg);
    const std::size_t n = o.stage.value_or(2);
    const Cylinder c = q_construction(a, o.L.value_or(2 * n));
    std::vector<SparseVector> gens;
    for (std::size_t g : o.gens) {
      if (g >= a->dim()) throw ValidationError("--gens index out of range");
      gens.push_back(SparseVector::unit(g));
    }
    return lemma23_check(c.d0, c.fold, IdealBasis::generated(a, gens), n);
  }
  if (w == "lemma64") return lemma64_build(resolve(o.a, f, fg), resolve(o.b, f, fg), need(o.L, "--L")).report;
  if (w == "corollary65") {
    std::vector<std::size_t> Ls;
    for (std::size_t l = 2; l <= need(o.L, "--L"); ++l) Ls.push_back(l);
    return corollary65_compare(resolve(o.a, f, fg), resolve(o.b, f, fg), Ls);
  }
  if (w == "lemma66") return lemma66_decompose(resolve(o.alg, f, fg), o.v_dim.value_or(1), need(o.stage, "--stage"));
  if (w == "prop68") return prop68_crosscheck(resolve(o.alg.empty() ? "k" : o.alg, f, fg), o.v_dim.value_or(1), need(o.stage, "--stage"));
  if (w == "remark55") {
    if (f.is_rationals()) throw ValidationError("remark55 needs --field Fp:<p>");
    return remark55_check(f.characteristic(), o.v_dim.value_or(1), need(o.stage, "--stage"));
  }
  throw ValidationError("unknown verification '" + w + "'");
}

VerificationReport upsilon(const Options& o, const Field& f, bool fg) {
  const std::size_t a_dim = o.a_dim ? *o.a_dim : resolve(o.alg.empty() ? "k" : o.alg, f, fg)->dim();
  const UpsilonTable t = cqcalc::upsilon(a_dim, o.v_dim.value_or(1), need(o.stage, "--stage"));
  VerificationReport r;
  r.lemma = "upsilon";
  r.input("a_dim", a_dim);
  r.input("v_dim", t.v_dim);
  r.input("cut", t.cut);
  std::vector<std::size_t> c, totals;
  for (const auto& x : t.C) c.push_back(x.get_ui());
  for (std::size_t n = 1; n < t.D.size(); ++n) {
    std::vector<std::size_t> row;
    for (const auto& x : t.D[n]) row.push_back(x.get_ui());
    r.tables["D_" + std::to_string(n)] = row;
  }
  for (std::size_t s = 1; s <= t.cut + 1; ++s) totals.push_back(t.stage_total(s).get_ui());
  r.tables["C"] = c;
  r.tables["stage_total"] = totals;
  return r;
}

VerificationReport span(const Options& o, const Field& f, bool fg) {
  const SpanData s = io::span_from_json(io::read_json(o.file), fg ? std::optional<Field>(f) : std::nullopt, o.file);
  const SpanReport sr = verify_span(s);
  VerificationReport r;
  r.lemma = "span";
  r.input("file", o.file);
  r.input("length", s.length());
  field_used = s.source()->field().name();
  r.tables["failing_pairs"] = sr.failing_pairs;
  r.check("u_multiplicative", sr.u_multiplicative);
  r.check("degrees", sr.degrees_ok);
  for (std::size_t i = 0; i < sr.failing_pairs.size(); ++i) r.check("identity_degree_" + std::to_string(i + 1), sr.failing_pairs[i]);
  return r;
}

VerificationReport nilh(const Options& o, const Field& f, bool fg) {
  const auto [fm, gm] = io::hom_pair_from_json(io::read_json(o.file), fg ? std::optional<Field>(f) : std::nullopt, o.file);
  field_used = fm.field().name();
  fm.require_multiplicative();
  gm.require_multiplicative();
  const std::size_t N = o.stage.value_or(fm.target->dim() + 1);
  VerificationReport r;
  r.lemma = "nilh";
  r.input("file", o.file);
  r.input("bound", N);
  const auto w = nil_homotopic(fm, gm, N);
  r.check("nil_homotopic_within_bound", w.has_value());
  if (w) {
    r.tables["stage"] = {w->stage};
    r.tables["cylinder_dim"] = {w->cylinder.algebra->dim()};
    r.check("restriction_d0_is_f", w->d0_gives_f);
    r.check("restriction_d1_is_g", w->d1_gives_g);
    r.check("witness_multiplicative", w->multiplicative);
  }
  return r;
}

}  // namespace verbs

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact pro-algebra calculus: constructions, homology and verifications"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", o.field, "Q or Fp:<p>");
  app.add_option("--stage", o.stage, "stage or degree bound");
  app.add_option("--L", o.L, "word-length bound");
  app.add_option("--v-dim", o.v_dim, "dimension of V");
  app.add_option("--a-dim", o.a_dim, "dimension of A (upsilon)");
  app.add_option("--seed", o.seed, "seed for random panels");
  app.add_flag("--json", o.json, "machine-readable report");

  const std::string alg_help = "algebra file or built-in: k, kxk, dual, trunc:<m>, mat:<n>";
  auto* check = app.add_subcommand("check", "validate an algebra file");
  check->add_option("file", o.file, alg_help)->required();
  auto* homology = app.add_subcommand("homology", "homology of x | theta | hn");
  homology->add_option("complex", o.what)->required();
  homology->add_option("--alg", o.alg, alg_help)->required();
  auto* tower = app.add_subcommand("tower", "stages of cylinder | universal | power | free");
  tower->add_option("construction", o.what)->required();
  tower->add_option("--alg", o.alg, alg_help)->required();
  auto* verify = app.add_subcommand("verify", "operators | lemma23 | lemma64 | corollary65 | lemma66 | prop68 | remark55");
  verify->add_option("lemma", o.what)->required();
  verify->add_option("--alg", o.alg, alg_help);
  verify->add_option("--a", o.a, alg_help);
  verify->add_option("--b", o.b, alg_help);
  verify->add_option("--gens", o.gens, "basis indices generating the ideal (lemma23)")->delimiter(',');
  auto* ups = app.add_subcommand("upsilon", "coinvariant dimensions");
  ups->add_option("--alg", o.alg, alg_help);
  auto* span = app.add_subcommand("span", "verify a span file");
  span->add_option("file", o.file)->required();
  auto* nilh = app.add_subcommand("nilh", "nil-homotopy of the maps f, g in a file");
  nilh->add_option("file", o.file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  json out;
  int status = 0;
  try {
    const Field f = Field::parse(o.field);
    const bool fg = app.count("--field") > 0;
    VerificationReport r;
    if (*check) r = verbs::check(o, f, fg);
    else if (*homology) r = verbs::homology(o, f, fg);
    else if (*tower) r = verbs::tower(o, f, fg);
    else if (*verify) r = verbs::verify(o, f, fg);
    else if (*ups) r = verbs::upsilon(o, f, fg);
    else if (*span) r = verbs::span(o, f, fg);
    else r = verbs::nilh(o, f, fg);
    out = io::report_to_json(r);
    bool ok = true;
    for (const auto& c : r.checks) ok = ok && c.residual == 0;
    out["pass"] = ok;
    status = ok ? 0 : 1;
  } catch (const TruncationTooSmall& e) {
    out = {{"error", "truncation_too_small"}, {"message", e.what()}, {"pass", false}};
    status = 3;
  } catch (const std::exception& e) {
    // ValidationError, malformed fields, and inputs violating a precondition
    out = {{"error", "invalid_input"}, {"message", e.what()}, {"pass", false}};
    status = 2;
  }
  json command = json::array();
  for (int i = 1; i < argc; ++i) command.push_back(argv[i]);
  out["command"] = command;
  out["field"] = field_used.empty() ? o.field : field_used;
  if (o.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    if (status >= 2) {
      std::cerr << "error: " << out["message"].get<std::string>() << "\n";
      return status;
    }
    print_human(out, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return status;
}
