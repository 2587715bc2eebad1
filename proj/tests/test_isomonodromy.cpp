#include <gtest/gtest.h>

#include "pvc/isomonodromy.hpp"

using namespace pvc;

namespace {

RF parse(const std::string& s, const ContextPtr& ctx) { return parse_expr(s, ctx); }

}  // namespace

TEST(Isomonodromy, HamiltonVectorFields) {
  const auto ctx = template_context();
  const auto p1 = hamilton_vector_field(PainleveKind::P1, {}, ctx);
  EXPECT_TRUE(rf_equal(p1.dq, parse("p", ctx)));
  EXPECT_TRUE(rf_equal(p1.dp, parse("6*q^2 + t", ctx)));
  const auto p2 = hamilton_vector_field(PainleveKind::P2, symbolic_params(PainleveKind::P2, ctx), ctx);
  EXPECT_TRUE(rf_equal(p2.dq, parse("p", ctx)));
  EXPECT_TRUE(rf_equal(p2.dp, parse("2*q^3 + t*q + alpha", ctx)));
  const auto p34 = hamilton_vector_field(PainleveKind::P34, symbolic_params(PainleveKind::P34, ctx), ctx);
  EXPECT_TRUE(rf_equal(p34.dq, parse("-2*q*p + 1", ctx)));
}

TEST(Isomonodromy, ResidualVanishesForEveryKind) {
  for (auto k : kAllKinds) {
    const auto ctx = template_context();
    const RF R = compat_residual(k, symbolic_params(k, ctx), ctx);
    EXPECT_TRUE(R.is_zero()) << kind_name(k) << ": " << residual_monomials(R) << " monomials";
  }
}

TEST(Isomonodromy, FrozenFlowLeavesResidual) {
  const auto ctx = template_context();
  const auto T = painleve_template(PainleveKind::P2, symbolic_params(PainleveKind::P2, ctx), ctx);
  const RF R = compat_residual(T.V, T.A, HamiltonFlow{RF(ctx), RF(ctx)});
  EXPECT_FALSE(R.is_zero());
}

TEST(Isomonodromy, PerturbedPotentialLeavesResidual) {
  for (auto k : kAllKinds) {
    const auto r = check_isomonodromy(k);
    EXPECT_EQ(r.status, Status::Pass) << r.kind << ": " << r.detail;
    ASSERT_FALSE(r.perturbations.empty());
    for (const auto& p : r.perturbations) EXPECT_GT(p.residual_monomials, 0u) << r.kind << " " << p.label;
    EXPECT_GT(r.frozen_flow_monomials, 0u) << r.kind;
  }
}

TEST(Isomonodromy, PrintedVariantsAreReported) {
  const auto results = isomonodromy_suite();
  ASSERT_EQ(results.size(), std::size(kAllKinds) + 2);
  std::size_t verified_pass = 0;
  for (const auto& r : results)
    if (r.form == "verified" && r.status == Status::Pass) ++verified_pass;
  EXPECT_EQ(verified_pass, std::size(kAllKinds));
  const auto d = isomonodromy_discrepancies(results);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].subject, "P4");
  for (const auto& x : d) EXPECT_NE(x.message.find("residual monomials"), std::string::npos);
  for (const auto& r : results)
    if (r.form == "printed") {
      EXPECT_EQ(r.status, Status::Fail);
      EXPECT_GT(r.residual_monomials, 0u);
      EXPECT_FALSE(r.residual_terms.empty());
    }
}
