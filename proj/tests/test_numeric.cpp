#include <gtest/gtest.h>

#include "pvc/numeric.hpp"

using namespace pvc;

namespace {

const std::vector<CoverCase>& cases() {
  static const auto c = load_catalog();
  return c;
}

const CoverCase& get(const std::string& id) {
  const auto* c = find_case(cases(), id);
  if (!c) throw std::runtime_error("missing case " + id);
  return *c;
}

}  // namespace

TEST(Numeric, RationalCoversAgreeWithExactVerdicts) {
  for (const auto& c : cases()) {
    if (c.is_split()) continue;
    const auto r = sample_verify_cover(c, 20, 1e-9);
    EXPECT_EQ(r.status, Status::Pass) << c.id << " max error " << r.max_error;
    EXPECT_EQ(r.points, 20) << c.id;
  }
}

TEST(Numeric, SpotCasesFromTheReferenceTable) {
  EXPECT_EQ(sample_verify_cover(get("kummer2nd"), 20, 1e-10).status, Status::Pass);
  EXPECT_EQ(sample_verify_cover(get("d7-alg"), 20, 1e-9).status, Status::Pass);
}

TEST(Numeric, CorruptedTargetFails) {
  const auto& c = get("d6-alg");
  const RF bad = c.target_potential + RF::constant(c.ctx, Rat(1, 1000000));
  const auto r = sample_verify_cover(c, 20, 1e-9, kDefaultSeed, bad);
  EXPECT_EQ(r.status, Status::Fail);
  EXPECT_GT(r.max_error, 1e-9);
}

TEST(Numeric, SamplingIsDeterministicPerSeed) {
  const auto& c = get("p4-rat");
  const auto a = sample_verify_cover(c, 20, 1e-9, 7), b = sample_verify_cover(c, 20, 1e-9, 7);
  EXPECT_EQ(a.max_error, b.max_error);
  const auto d = sample_verify_cover(c, 20, 1e-9, 8);
  EXPECT_NE(a.max_error, d.max_error);
}

TEST(Numeric, SplitCasesMatchCatalogAndFlagPrintedForms) {
  for (const std::string id : {"p5-lag", "degp5-alg"}) {
    const auto sc = split_case(get(id));
    ASSERT_TRUE(sc.has_value());
    const auto r = sample_verify_split(*sc, 20, 1e-8);
    EXPECT_EQ(r.status, Status::Pass) << id << " " << r.detail;
    ASSERT_TRUE(r.route_gap.has_value());
    EXPECT_LE(*r.route_gap, 1e-7);
    ASSERT_TRUE(r.printed_error.has_value());
    EXPECT_GT(*r.printed_error, 1e-8);
    ASSERT_EQ(r.discrepancies.size(), 1u);
    EXPECT_NE(r.discrepancies[0].message.find("term '"), std::string::npos) << r.discrepancies[0].message;
  }
}

TEST(Numeric, DegP5PrintedTermIsolated) {
  const auto r = sample_verify_split(*split_case(get("degp5-alg")), 20, 1e-8);
  ASSERT_EQ(r.discrepancies.size(), 1u);
  EXPECT_NE(r.discrepancies[0].message.find("(4*h^2-13)/(16*(z-1)^2)"), std::string::npos);
  EXPECT_NE(r.discrepancies[0].message.find("factor -1"), std::string::npos);
}

TEST(Numeric, VanishingSourceLeavesOnlySchwarzian) {
  auto sc = *split_case(get("p5-lag"));
  sc.h = 1.0;
  const auto r = sample_verify_split(sc, 20, 1e-8);
  EXPECT_EQ(r.status, Status::Pass);
}

TEST(Numeric, CompatibilityFormulaByMixedPartials) {
  for (auto k : kAllKinds) {
    const auto r = compat_numeric(k);
    EXPECT_EQ(r.status, Status::Pass) << kind_name(k) << " " << r.max_error;
  }
  EXPECT_EQ(compat_numeric(PainleveKind::P4, 5, 1e-8, kDefaultSeed, TemplateForm::Printed).status, Status::Fail);
  EXPECT_EQ(compat_numeric(PainleveKind::P3p_D6, 5, 1e-8, kDefaultSeed, TemplateForm::Printed).status, Status::Fail);
}

TEST(Numeric, ClassicalIdentities) {
  const auto reports = classical_identities(1e-10);
  ASSERT_EQ(reports.size(), 5u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.status, Status::Pass) << r.name << " " << r.max_error;
    EXPECT_EQ(r.points, 10);
  }
}

TEST(Numeric, ClassicalSpotValues) {
  using namespace special;
  const double c = 5.0 / 3, x = 1.2;
  EXPECT_NEAR(std::abs(hyp0f1(c, x * x / 16) - std::exp(-x / 2) * hyp1f1(c - 0.5, 2 * c - 1, x)), 0.0, 1e-12);
  const double a0 = 1.0 / (std::pow(3.0, 2.0 / 3) * std::tgamma(2.0 / 3));
  EXPECT_NEAR(std::abs(airy_ai(0.0) - a0), 0.0, 1e-15);
  const Complex I(0, 1);
  const double cb = 1.5, xb = 0.8;
  const Complex rhs = std::tgamma(cb) * std::pow(-I * xb / 4.0, 1 - cb) * bessel_j(cb - 1, -I * xb / 2.0);
  EXPECT_NEAR(std::abs(hyp0f1(cb, xb * xb / 16) - rhs), 0.0, 1e-10);
}

TEST(Numeric, SuiteHasNoFailures) {
  const auto s = numeric_suite(cases());
  EXPECT_EQ(s.failures(), 0u);
  EXPECT_EQ(s.discrepancies().size(), 2u);
}
