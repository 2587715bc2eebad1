#include <gtest/gtest.h>

#include "pvc/cover.hpp"

using namespace pvc;

namespace {

const std::vector<CoverCase>& cases() {
  static const auto c = load_catalog();
  return c;
}

const CoverCase& get(const std::string& id) {
  const auto* c = find_case(cases(), id);
  if (!c) throw std::runtime_error("no case " + id);
  return *c;
}

}  // namespace

class CoverLayers : public ::testing::TestWithParam<std::string> {};

TEST_P(CoverLayers, AllChecksPass) {
  const auto r = verify_case(get(GetParam()));
  EXPECT_EQ(r.layer_a.status, Status::Pass) << r.layer_a.detail << " " << r.layer_a.residual;
  EXPECT_NE(r.layer_b.status, Status::Fail) << r.layer_b.detail << " " << r.layer_b.residual;
  EXPECT_EQ(r.signature_check.status, Status::Pass) << r.signature_check.detail;
  EXPECT_NE(r.branch_check.status, Status::Fail) << r.branch_check.detail;
}

INSTANTIATE_TEST_SUITE_P(Builtin, CoverLayers,
                         ::testing::Values("p4-sym", "weber", "d6-alg", "p4-her", "kummer2nd", "p5-rat", "d8-alg",
                                           "p2-sym", "p34-sym", "airy", "p34-rat", "d7-alg", "p4-rat", "p1-sym-a",
                                           "p1-sym-b", "p2-rat", "degp5-alg", "p5-lag"),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (auto& ch : n)
                             if (ch == '-') ch = '_';
                           return n;
                         });

TEST(Cover, FamilyCasesPassLayerB) {
  for (const char* id : {"d6-alg", "p4-her", "p5-rat", "d8-alg", "p34-rat", "d7-alg", "p4-rat", "p2-rat"}) {
    const auto r = verify_case(get(id));
    EXPECT_EQ(r.layer_b.status, Status::Pass) << id << ": " << r.layer_b.detail;
  }
}

TEST(Cover, LayerBSkippedForClassicalTargets) {
  for (const char* id : {"airy", "weber", "kummer2nd"}) {
    const auto r = verify_case(get(id));
    EXPECT_EQ(r.layer_b.status, Status::Skipped) << id;
  }
}

TEST(Cover, SliceEvaluationAtTZero) {
  for (const char* id : {"p2-sym", "p1-sym-a"}) {
    const auto r = verify_case(get(id));
    EXPECT_EQ(r.layer_b.status, Status::Pass) << id << r.layer_b.detail;
  }
}

TEST(SolveP, Examples) {
  const auto& d6 = get("d6-alg");
  EXPECT_TRUE(rf_equal(solve_p_from_q(PainleveKind::P3p_D6, d6.params, *d6.q), parse_expr("-3/(4*s)", d6.ctx)));
  const auto& r34 = get("p34-rat");
  EXPECT_TRUE(rf_equal(solve_p_from_q(PainleveKind::P34, r34.params, *r34.q), parse_expr("1/(2*t)", r34.ctx)));
  const auto& p5 = get("p5-rat");
  EXPECT_TRUE(rf_equal(solve_p_from_q(PainleveKind::P5, p5.params, *p5.q), parse_expr("-3/4", p5.ctx)));
}

TEST(Cover, HeritagePotentialDiscrepancyNamed) {
  const auto r = verify_case(get("p4-her"));
  ASSERT_FALSE(r.discrepancies.empty());
  EXPECT_NE(r.discrepancies[0].message.find("4/(3*(z+2*t))"), std::string::npos) << r.discrepancies[0].message;
  EXPECT_NE(r.discrepancies[0].message.find("3/(4*(z + 2*t)^2)"), std::string::npos) << r.discrepancies[0].message;
}

TEST(Cover, PrintedQuarticMapFlagged) {
  const auto r = verify_case(get("p34-rat"));
  bool found = false;
  for (const auto& d : r.discrepancies)
    if (d.field == "map") {
      found = true;
      EXPECT_NE(d.message.find("does not reproduce"), std::string::npos) << d.message;
    }
  EXPECT_TRUE(found);
}

TEST(Cover, CorruptedTargetFailsLayerA) {
  CoverCase c = get("airy");
  c.target_potential = c.target_potential + Rat(1);
  const auto r = verify_case(c);
  EXPECT_EQ(r.layer_a.status, Status::Fail);
  EXPECT_GT(r.layer_a.residual_monomials, 0u);
}

TEST(Cover, BranchPartitionsOfMaps) {
  const auto& c = get("p4-rat");
  auto [mu, nu] = branch_partitions(*c.map);
  EXPECT_EQ(mu, (std::vector<int>{3, 1}));
  EXPECT_EQ(nu, (std::vector<int>{4}));
  const auto& d7 = get("d7-alg");
  std::tie(mu, nu) = branch_partitions(*d7.map);
  EXPECT_EQ(mu, (std::vector<int>{3}));
  EXPECT_EQ(nu, (std::vector<int>{2, 1}));
}

TEST(Cover, SplitPrintedFormsReported) {
  const auto r = verify_case(get("degp5-alg"));
  ASSERT_GE(r.discrepancies.size(), 2u);
  EXPECT_NE(r.discrepancies[0].message.find("(4*h^2-13)"), std::string::npos) << r.discrepancies[0].message;
  EXPECT_NE(r.discrepancies[1].message.find("do not match"), std::string::npos) << r.discrepancies[1].message;
}
