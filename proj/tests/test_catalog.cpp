#include <gtest/gtest.h>

#include <set>

#include "pvc/catalog.hpp"

using namespace pvc;

TEST(Catalog, BuiltinHasEighteenCases) {
  auto cases = load_catalog();
  ASSERT_EQ(cases.size(), 18u);
  std::size_t rational = 0, split = 0;
  for (const auto& c : cases) (c.is_split() ? split : rational)++;
  EXPECT_EQ(rational, 16u);
  EXPECT_EQ(split, 2u);
}

TEST(Catalog, RosterIds) {
  auto cases = load_catalog();
  std::set<std::string> ids;
  for (const auto& c : cases) ids.insert(c.id);
  for (const char* id : {"p4-sym", "weber", "d6-alg", "p4-her", "kummer2nd", "p5-rat", "d8-alg", "p2-sym", "p34-sym",
                         "airy", "p34-rat", "d7-alg", "p4-rat", "p1-sym-a", "p1-sym-b", "p2-rat", "degp5-alg", "p5-lag"})
    EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Catalog, MapsAsPrinted) {
  auto cases = load_catalog();
  const auto* d8 = find_case(cases, "d8-alg");
  ASSERT_NE(d8, nullptr);
  EXPECT_TRUE(rf_equal(*d8->map, parse_expr("h*(z-s)^2/z", d8->ctx)));
  EXPECT_EQ(d8->ctx->root_degree(), 2);
  const auto* p2 = find_case(cases, "p2-rat");
  EXPECT_TRUE(rf_equal(*p2->map, parse_expr("(z^2+t)^3/36", p2->ctx)));
  const auto* d6 = find_case(cases, "d6-alg");
  EXPECT_TRUE(rf_equal(*d6->map, parse_expr("(z-s)^2/z", d6->ctx)));
}

TEST(Catalog, DuplicateIdRejected) {
  const std::string doc = R"({"cases": [
    {"id": "a", "source": {"kind": "DW", "m": "1/6"}, "root_degree": 1, "map": "z^3/9",
     "branch": {"mu": [3], "nu": [3]}, "target": {"kind": "Airy", "params": {}}, "target_potential": "z", "slice_t0": false},
    {"id": "a", "source": {"kind": "DW", "m": "1/6"}, "root_degree": 1, "map": "z^3/9",
     "branch": {"mu": [3], "nu": [3]}, "target": {"kind": "Airy", "params": {}}, "target_potential": "z", "slice_t0": false}]})";
  try {
    parse_catalog(doc);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.case_id, "a");
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
  }
}

TEST(Catalog, UnparseableMapNamesCase) {
  const std::string doc = R"({"cases": [
    {"id": "broken", "source": {"kind": "DW", "m": "1/6"}, "root_degree": 1, "map": "z^3/(9",
     "branch": {"mu": [3], "nu": [3]}, "target": {"kind": "Airy", "params": {}}, "target_potential": "z", "slice_t0": false}]})";
  try {
    parse_catalog(doc);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.case_id, "broken");
    EXPECT_NE(std::string(e.what()).find("map"), std::string::npos);
  }
}

TEST(Catalog, MissingFieldAndUnknownKind) {
  EXPECT_THROW(parse_catalog(R"({"cases": [{"id": "x"}]})"), SchemaError);
  EXPECT_THROW(parse_catalog(R"({"cases": [{"id": "x", "source": {"kind": "Q"}, "root_degree": 1, "map": "z",
    "branch": {"mu": [1], "nu": [1]}, "target": {"kind": "Airy"}, "target_potential": "z", "slice_t0": false}]})"),
               SchemaError);
  EXPECT_THROW(parse_catalog(R"({"cases": [{"id": "x", "source": {"kind": "DW", "m": "1"}, "root_degree": 1, "map": "z",
    "branch": {"mu": [1], "nu": [1]}, "target": {"kind": "P7"}, "target_potential": "z", "slice_t0": false}]})"),
               SchemaError);
  EXPECT_THROW(parse_catalog("not json"), SchemaError);
}

TEST(Catalog, UnknownIdentifierInPotential) {
  try {
    parse_catalog(R"({"cases": [{"id": "y", "source": {"kind": "DW", "m": "1"}, "root_degree": 1, "map": "z",
      "branch": {"mu": [1], "nu": [1]}, "target": {"kind": "Airy"}, "target_potential": "w", "slice_t0": false}]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("target_potential"), std::string::npos);
  }
}

TEST(Catalog, EveryExpressionRoundTrips) {
  for (const auto& c : load_catalog()) {
    EXPECT_TRUE(rf_equal(parse_expr(render_expr(c.target_potential), c.ctx), c.target_potential)) << c.id;
    if (c.map) {
      EXPECT_TRUE(rf_equal(parse_expr(render_expr(*c.map), c.ctx), *c.map)) << c.id;
    }
  }
}
