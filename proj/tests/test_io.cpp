#include <gtest/gtest.h>

#include "cqcalc/catalog.hpp"
#include "cqcalc/io.hpp"
#include "cqcalc/splitting.hpp"

using namespace cqcalc;
using io::json;

namespace {

std::string error_of(const json& j) {
  try {
    io::algebra_from_json(j, std::nullopt, "doc");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, AlgebraRoundTrip) {
  const Field F3 = Field::prime(3);
  for (const auto& a : {catalog::dual_numbers(Field::rationals()), catalog::matrices(F3, 2), catalog::truncated_poly(F3, 3)}) {
    const json j = io::algebra_to_json(*a);
    EXPECT_EQ(*io::algebra_from_json(j), *a);
    EXPECT_EQ(io::algebra_to_json(*io::algebra_from_json(json::parse(j.dump()))).dump(), j.dump());
  }
}

TEST(Io, CoefficientsAreReduced) {
  const json j = json::parse(R"({"field": {"Fp": 3}, "dim": 1, "table": [[{"0": "4/2"}]]})");
  const auto a = io::algebra_from_json(j);
  EXPECT_EQ(a->product(0, 0).at(0), Scalar(2));
  EXPECT_EQ(a->field().name(), "Fp:3");
  // 1/3 has no residue mod 3
  EXPECT_NE(error_of(json::parse(R"({"field": {"Fp": 3}, "dim": 1, "table": [[{"0": "1/3"}]]})")).find("doc.table[0][0].0"),
            std::string::npos);
  // -x*x = x over Q becomes x*x = 2x over F3 after the override
  const auto q = io::algebra_from_json(json::parse(R"({"field": "Q", "dim": 1, "table": [[{"0": -1}]]})"), Field::prime(3));
  EXPECT_EQ(q->product(0, 0).at(0), Scalar(2));
}

TEST(Io, Diagnostics) {
  EXPECT_NE(error_of(json::parse(R"({"field": "Q", "table": []})")).find("missing field 'dim'"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"field": "R", "dim": 0, "table": []})")).find("doc.field"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"field": "Q", "dim": 1, "table": [[{"1": 1}]]})")).find("out of range"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"field": "Q", "dim": 1, "table": [[{"0": 1.5}]]})")).find("coefficient"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"field": "Q", "dim": 2, "unital": 0, "table": [[{}, {}], [{}, {}]]})")).find("unit"),
            std::string::npos);
  const std::string nonassoc = error_of(json::parse(
      R"({"field": "Q", "dim": 2, "basis": ["x", "y"], "table": [[{}, {"0": 1}], [{"1": 1}, {}]]})"));
  EXPECT_NE(nonassoc.find("(x y) x != x (y x)"), std::string::npos) << nonassoc;
}

TEST(Io, SpanAndMapDocuments) {
  const json alg = io::algebra_to_json(*catalog::dual_numbers(Field::rationals()));
  const auto [f, g] = io::hom_pair_from_json({{"source", alg}, {"target", alg}, {"f", {{{"0", 1}}, {{"1", 1}}}}, {"g", {{{"0", 1}}, json::object()}}});
  EXPECT_TRUE(f.multiplicative());
  EXPECT_TRUE(g.multiplicative());
  EXPECT_THROW(io::span_from_json({{"source", alg}, {"target", alg}, {"u", json::array()}, {"D", json::array()}}), ValidationError);
}

TEST(Io, ReportSchema) {
  const auto k = catalog::ground(Field::rationals());
  const json j = io::report_to_json(lemma64_build(k, k, 3).report);
  for (const char* key : {"lemma", "params", "checks", "tables", "pass"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["lemma"], "lemma64");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["params"]["L"], "3");
  EXPECT_EQ(j["checks"][0]["residual"], 0);
}
