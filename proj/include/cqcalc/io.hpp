#pragma once

// JSON documents for algebras, spans, homomorphism pairs and reports.
//
// Algebra:  {"field": "Q" | {"Fp": p}, "dim": n, "unital": i?, "basis": [labels],
//            "degrees": [ints]?, "table": n×n array of {"index": coeff} maps}
// Matrix:   array of columns, each a {"row": coeff} map.
// Coefficients are JSON integers or strings "p/q".

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cqcalc/algebra.hpp"
#include "cqcalc/report.hpp"
#include "cqcalc/spans.hpp"

namespace cqcalc::io {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

inline const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

inline std::size_t count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline Scalar scalar(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_string()) {
    Scalar s;
    if (s.set_str(j.get<std::string>(), 10) != 0) fail(where, "malformed rational '" + j.get<std::string>() + "'");
    if (s.get_den() == 0) fail(where, "zero denominator");
    s.canonicalize();
    return s;
  }
  fail(where, "coefficient must be an integer or a \"p/q\" string");
}

inline SparseVector vector(const json& j, std::size_t dim, const Field& f, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a {\"index\": coefficient} map");
  VecBuilder acc(f);
  for (const auto& [key, val] : j.items()) {
    std::size_t i = 0;
    try {
      std::size_t used = 0;
      i = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(where, "index '" + key + "' is not a number");
    }
    if (i >= dim) fail(where, "index " + key + " out of range (dim " + std::to_string(dim) + ")");
    try {
      acc.add(i, f.reduce(scalar(val, where + "." + key)));
    } catch (const std::domain_error& e) {
      fail(where + "." + key, e.what());
    }
  }
  return acc.take();
}

}  // namespace detail

inline Field field_from_json(const json& j, const std::string& where = "field") {
  if (j.is_string()) {
    try {
      return Field::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      detail::fail(where, e.what());
    }
  }
  if (j.is_object() && j.contains("Fp")) {
    try {
      return Field::prime(detail::count(j.at("Fp"), where + ".Fp"));
    } catch (const std::invalid_argument& e) {
      detail::fail(where, e.what());
    }
  }
  detail::fail(where, "expected \"Q\" or {\"Fp\": p}");
}

/// Parses and validates an algebra; `over` replaces the declared field.
inline AlgebraPtr algebra_from_json(const json& j, std::optional<Field> over = std::nullopt, const std::string& where = "algebra") {
  const Field f = over ? *over : field_from_json(detail::member(j, "field", where), where + ".field");
  const std::size_t n = detail::count(detail::member(j, "dim", where), where + ".dim");
  std::vector<std::string> labels;
  if (j.contains("basis")) {
    const json& b = j.at("basis");
    if (!b.is_array() || b.size() != n) detail::fail(where + ".basis", "expected " + std::to_string(n) + " labels");
    for (std::size_t i = 0; i < n; ++i) {
      if (!b[i].is_string()) detail::fail(where + ".basis[" + std::to_string(i) + "]", "label must be a string");
      labels.push_back(b[i].get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  }
  Algebra a(f, labels);
  const json& t = detail::member(j, "table", where);
  if (!t.is_array() || t.size() != n) detail::fail(where + ".table", "expected " + std::to_string(n) + " rows");
  for (std::size_t r = 0; r < n; ++r) {
    const std::string row = where + ".table[" + std::to_string(r) + "]";
    if (!t[r].is_array() || t[r].size() != n) detail::fail(row, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) a.set_product(r, c, detail::vector(t[r][c], n, f, row + "[" + std::to_string(c) + "]"));
  }
  if (j.contains("unital") && !j.at("unital").is_null()) a.set_unit(detail::count(j.at("unital"), where + ".unital"));
  if (j.contains("degrees")) {
    const json& d = j.at("degrees");
    if (!d.is_array() || d.size() != n) detail::fail(where + ".degrees", "expected " + std::to_string(n) + " integers");
    std::vector<int> deg;
    for (const auto& x : d) {
      if (!x.is_number_integer()) detail::fail(where + ".degrees", "expected integers");
      deg.push_back(x.get<int>());
    }
    a.set_degrees(std::move(deg));
  }
  if (const auto tri = a.associativity_failure()) {
    const auto& [x, y, z] = *tri;
    detail::fail(where, "not associative: (" + labels[x] + " " + labels[y] + ") " + labels[z] + " != " + labels[x] + " (" +
                            labels[y] + " " + labels[z] + ") at basis triple (" + std::to_string(x) + ", " +
                            std::to_string(y) + ", " + std::to_string(z) + ")");
  }
  try {
    a.validate(false);
  } catch (const ValidationError& e) {
    detail::fail(where, e.what());
  }
  return share(std::move(a));
}

/// Matrix with `rows` rows given as an array of columns.
inline SparseMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const Field& f, const std::string& where) {
  if (!j.is_array() || j.size() != cols) detail::fail(where, "expected " + std::to_string(cols) + " columns");
  std::vector<SparseVector> out;
  for (std::size_t c = 0; c < cols; ++c) out.push_back(detail::vector(j[c], rows, f, where + "[" + std::to_string(c) + "]"));
  return SparseMatrix::from_columns(rows, std::move(out));
}

/// Reads a JSON file; parse errors carry the file name, line and column.
inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline AlgebraPtr load_algebra(const std::string& path, std::optional<Field> over = std::nullopt) {
  return algebra_from_json(read_json(path), over, path);
}

/// {"source": algebra, "target": algebra (graded), "u": matrix, "D": [matrices]}
inline SpanData span_from_json(const json& j, std::optional<Field> over = std::nullopt, const std::string& where = "span") {
  const AlgebraPtr a = algebra_from_json(detail::member(j, "source", where), over, where + ".source");
  const AlgebraPtr b = algebra_from_json(detail::member(j, "target", where), over, where + ".target");
  if (!b->graded()) detail::fail(where + ".target", "span target must declare degrees");
  const Field& f = a->field();
  SpanData s{AlgebraHom(a, b, matrix_from_json(detail::member(j, "u", where), b->dim(), a->dim(), f, where + ".u")), {}};
  const json& d = detail::member(j, "D", where);
  if (!d.is_array()) detail::fail(where + ".D", "expected an array of matrices");
  for (std::size_t i = 0; i < d.size(); ++i)
    s.D.push_back(matrix_from_json(d[i], b->dim(), a->dim(), f, where + ".D[" + std::to_string(i) + "]"));
  return s;
}

/// {"source": algebra, "target": algebra, "f": matrix, "g": matrix}
inline std::pair<AlgebraHom, AlgebraHom> hom_pair_from_json(const json& j, std::optional<Field> over = std::nullopt,
                                                           const std::string& where = "maps") {
  const AlgebraPtr a = algebra_from_json(detail::member(j, "source", where), over, where + ".source");
  const AlgebraPtr b = algebra_from_json(detail::member(j, "target", where), over, where + ".target");
  const Field& f = a->field();
  AlgebraHom fm(a, b, matrix_from_json(detail::member(j, "f", where), b->dim(), a->dim(), f, where + ".f"));
  AlgebraHom gm(a, b, matrix_from_json(detail::member(j, "g", where), b->dim(), a->dim(), f, where + ".g"));
  return {std::move(fm), std::move(gm)};
}

inline json scalar_to_json(const Scalar& s) {
  if (s.get_den() == 1 && s.get_num().fits_slong_p()) return s.get_num().get_si();
  return s.get_str();
}

inline json vector_to_json(const SparseVector& v) {
  json out = json::object();
  for (const auto& [i, c] : v.entries) out[std::to_string(i)] = scalar_to_json(c);
  return out;
}

inline json field_to_json(const Field& f) {
  if (f.is_rationals()) return "Q";
  return json{{"Fp", f.characteristic()}};
}

inline json algebra_to_json(const Algebra& a) {
  json t = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(vector_to_json(a.product(i, j)));
    t.push_back(std::move(row));
  }
  json out{{"field", field_to_json(a.field())}, {"dim", a.dim()}, {"basis", a.labels()}, {"table", std::move(t)}};
  if (a.unit()) out["unital"] = *a.unit();
  if (a.graded()) out["degrees"] = a.degrees();
  return out;
}

inline json matrix_to_json(const SparseMatrix& m) {
  json out = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(vector_to_json(m.column(c)));
  return out;
}

/// {"lemma", "params", "checks": [{"name", "residual"}], "tables", "pass"}
inline json report_to_json(const VerificationReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.inputs) params[k] = v;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"residual", c.residual}});
  json tables = json::object();
  for (const auto& [k, v] : r.tables) tables[k] = v;
  return {{"lemma", r.lemma}, {"params", params}, {"checks", checks}, {"tables", tables}, {"pass", r.pass()}};
}

}  // namespace cqcalc::io
