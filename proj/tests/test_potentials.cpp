#include <gtest/gtest.h>

#include "pvc/potentials.hpp"

using namespace pvc;

namespace {

ContextPtr wctx() { return VarContext::make({"z", "k", "m"}); }
RF P(const std::string& s, const ContextPtr& c) { return parse_expr(s, c); }

}  // namespace

TEST(Whittaker, Examples) {
  auto c = wctx();
  EXPECT_TRUE(rf_equal(whittaker_potential(P("0", c), P("1/2", c)), P("1/4", c)));
  EXPECT_TRUE(rf_equal(whittaker_potential(P("k", c), P("1/4", c)), P("1/4 - k/z - 3/(16*z^2)", c)));
  EXPECT_EQ(signature(whittaker_potential(P("k", c), P("m", c))).str(), "(0)(1)");
}

TEST(DegenerateWhittaker, Examples) {
  auto c = wctx();
  EXPECT_TRUE(rf_equal(dw_potential(P("1/2", c)), P("1/z", c)));
  EXPECT_TRUE(rf_equal(dw_potential(P("1/6", c)), P("1/z - 2/(9*z^2)", c)));
  EXPECT_EQ(signature(dw_potential(P("m", c))).str(), "(0)(1/2)");
}

TEST(Signature, ParseAndPrint) {
  EXPECT_EQ(SingularitySignature::parse("(1)^2").str(), "(1)^2");
  EXPECT_EQ(SingularitySignature::parse("(1)(0)(1/2)").str(), "(0)(1/2)(1)");
  EXPECT_EQ(SingularitySignature::parse("(0)^2(1)").irregular_part().str(), "(1)");
  EXPECT_THROW(SingularitySignature::parse("(x)"), ParseError);
}

TEST(IsApparent, Examples) {
  auto c = VarContext::make({"z"});
  RF zero = RF::constant(c, 0);
  EXPECT_TRUE(is_apparent(P("3/(4*z^2)", c), zero));
  EXPECT_FALSE(is_apparent(P("3/(4*z^2) + 1/z", c), zero));
  EXPECT_TRUE(is_apparent(P("2/z^2", c), zero));
  EXPECT_THROW(is_apparent(P("1/(5*z^2)", c), zero), DomainError);
  EXPECT_THROW(is_apparent(P("1/z^3", c), zero), DomainError);
}

TEST(IsApparent, DoublePoleCondition) {
  // 3/(4(z-1)^2) + b/(z-1) + v0 is apparent iff v0 = b^2
  auto c = VarContext::make({"z"});
  RF one = RF::constant(c, 1);
  EXPECT_TRUE(is_apparent(P("3/(4*(z-1)^2) + 2/(z-1) + 3 + z", c), one));
  EXPECT_FALSE(is_apparent(P("3/(4*(z-1)^2) + 2/(z-1) + 4 + z", c), one));
}

TEST(Templates, PrintedShapes) {
  auto c = template_context();
  auto a = P("alpha", c);
  auto t2 = painleve_template(PainleveKind::P2, {{"alpha", a}}, c);
  auto t0 = painleve_template(PainleveKind::P2, {{"alpha", P("0", c)}}, c);
  // V(alpha) - V(0) = 2 alpha z - 2 alpha q
  EXPECT_TRUE(rf_equal(t2.V - t0.V, P("2*alpha*z - 2*alpha*q", c)));
  EXPECT_TRUE(rf_equal(t2.A, P("1/(2*(z-q))", c)));
  auto t1 = painleve_template(PainleveKind::P1, {}, c);
  EXPECT_TRUE(rf_equal(t1.K, P("p^2/2 - 2*q^3 - t*q", c)));
  auto t5 = painleve_template(PainleveKind::P5, symbolic_params(PainleveKind::P5, c), c);
  EXPECT_TRUE(rf_equal(t5.constants.at("a0"), P("-beta/2 - 1/4", c)));
  EXPECT_TRUE(rf_equal(t5.constants.at("ainf"), P("(alpha+beta)/2 - 3/4", c)));
}

TEST(Templates, MissingParameterThrows) {
  auto c = template_context();
  EXPECT_THROW(painleve_template(PainleveKind::P4, {{"alpha", P("1", c)}}, c), DomainError);
  EXPECT_THROW(painleve_template(PainleveKind::P3p_D8, {{"alpha", P("1", c)}, {"beta", P("1", c)}, {"gamma", P("1", c)}}, c),
               DomainError);
}

class TemplateSignature : public ::testing::TestWithParam<PainleveKind> {};

TEST_P(TemplateSignature, MatchesCanonicalRow) {
  auto c = template_context();
  auto k = GetParam();
  auto T = painleve_template(k, symbolic_params(k, c), c);
  EXPECT_EQ(signature(T.V), canonical_signature(k)) << kind_name(k) << " " << signature(T.V).str();
  // double pole at z = q: coefficient 3/4 and apparent for symbolic q, p
  EXPECT_TRUE(is_apparent(T.V, RF::variable(c, "q"))) << kind_name(k);
}

INSTANTIATE_TEST_SUITE_P(AllKinds, TemplateSignature, ::testing::ValuesIn(kAllKinds),
                         [](const auto& info) { return kind_name(info.param); });

TEST(Templates, PrintedP4HamiltonianBreaksApparency) {
  auto c = template_context();
  auto T = painleve_template(PainleveKind::P4, symbolic_params(PainleveKind::P4, c), c, TemplateForm::Printed);
  EXPECT_FALSE(is_apparent(T.V, RF::variable(c, "q")));
}

TEST(Signature, MoebiusInvariance) {
  auto c = template_context();
  for (auto k : kAllKinds) {
    auto T = painleve_template(k, symbolic_params(k, c), c);
    const RF z = RF::variable(c, "z");
    const RF shifted = T.V.substitute({{"z", z + Rat(1)}});
    const RF inverted = T.V.substitute({{"z", RF::constant(c, 1) / z}}) / z.pow(4);
    EXPECT_EQ(signature(shifted), signature(T.V)) << kind_name(k);
    EXPECT_EQ(signature(inverted), signature(T.V)) << kind_name(k);
  }
}
