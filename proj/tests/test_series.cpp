#include <gtest/gtest.h>

#include <set>

#include "pvc/series_lab.hpp"

using namespace pvc;

namespace {

RF E(const std::string& s, const ContextPtr& c) { return parse_expr(s, c); }

const SeriesCheck& find_check(const std::vector<SeriesCheck>& v, const std::string& id) {
  for (const auto& c : v)
    if (c.id == id) return c;
  throw std::runtime_error("no check " + id);
}

}  // namespace

TEST(OdeResidual, PrintedRationalSolutions) {
  auto c = series_context();
  TSeries zero(c, 1, 12);
  EXPECT_TRUE(ode_residual(make_ode(OdeKind::P2, {{"alpha", "0"}}, c), zero).is_zero());
  EXPECT_TRUE(ode_residual_exact(make_ode(OdeKind::P34, {{"a", "1/4"}}, c), E("t/2", c)).is_zero());
  EXPECT_TRUE(ode_residual_exact(make_ode(OdeKind::P4, {{"alpha", "0"}, {"beta", "-2/9"}}, c), E("-2*t/3", c)).is_zero());
  EXPECT_FALSE(ode_residual_exact(make_ode(OdeKind::P34, {{"a", "1"}}, c), E("t/2", c)).is_zero());
}

TEST(OdeResidual, SeriesAgreesWithExact) {
  auto c = series_context();
  TSeries y(c, 1, 14);
  y.set(1, E("-2/3", c));
  EXPECT_TRUE(ode_residual(make_ode(OdeKind::P4, {{"alpha", "0"}, {"beta", "-2/9"}}, c), y).is_zero());
  y.set(3, E("1", c));
  EXPECT_FALSE(ode_residual(make_ode(OdeKind::P4, {{"alpha", "0"}, {"beta", "-2/9"}}, c), y).is_zero());
}

TEST(OdeResidual, DivisionByVanishingSeriesThrows) {
  auto c = series_context();
  TSeries zero(c, 1, 10);
  EXPECT_THROW(ode_residual(make_ode(OdeKind::P34, {{"a", "1"}}, c), zero), DivisionByZero);
  EXPECT_THROW(make_ode(OdeKind::P4, {{"alpha", "0"}}, c), DomainError);
}

TEST(OdeResidual, ClearedFormIsMultiplierTimesResidual) {
  auto c = series_context();
  const RF y = E("(t^2 + 3*t - 2)/(t - 5)", c);
  auto id = [](const RF& x) { return x; };
  for (auto k : kAllOdeKinds)
    for (bool printed : {false, true}) {
      if (printed && k != OdeKind::P3p) continue;
      std::map<std::string, std::string> p;
      int i = 2;
      for (const auto& n : ode_parameters(k)) p[n] = std::to_string(i++) + "/7";
      auto spec = make_ode(k, p, c);
      spec.printed_form = printed;
      const RF y1 = rf_diff_t(y), y2 = rf_diff_t(y1), t = RF::variable(c, "t");
      const RF lhs = ode_cleared(spec, y, y1, y2, t, id);
      const RF rhs = ode_multiplier(spec, y, t, id) * ode_residual_exact(spec, y);
      EXPECT_TRUE(rf_equal(lhs, rhs)) << ode_name(k);
    }
}

TEST(SymmetricSeries, P1Coefficients) {
  auto c = series_context();
  auto r = expand_symmetric(*find_symmetric_case("p1-sym-a"), 24);
  EXPECT_TRUE(rf_equal(r.y.coeff(8), E("1/336", c)));
  EXPECT_TRUE(rf_equal(r.y.coeff(13), E("1/26208", c)));
  EXPECT_TRUE(rf_equal(r.y.coeff(18), E("95/224550144", c)));
  EXPECT_GE(r.residual_precision, 24);
  auto b = expand_symmetric(*find_symmetric_case("p1-sym-b"), 13);
  EXPECT_TRUE(rf_equal(b.y.coeff(3), E("-1/6", c)));
  EXPECT_TRUE(rf_equal(b.y.coeff(8), E("1/264", c)));
  EXPECT_TRUE(rf_equal(b.y.coeff(13), E("-1/19008", c)));
}

TEST(SymmetricSeries, P2AndP34Coefficients) {
  auto c = series_context();
  auto p2 = expand_symmetric(*find_symmetric_case("p2-sym-a"), 8);
  EXPECT_TRUE(rf_equal(p2.y.coeff(5), E("alpha/40", c)));
  EXPECT_TRUE(rf_equal(p2.y.coeff(8), E("alpha*(10*alpha^2+1)/2240", c)));
  auto p2b = expand_symmetric(*find_symmetric_case("p2-sym-b"), 5);
  EXPECT_TRUE(rf_equal(p2b.y.coeff(2), E("-(alpha+1)/4", c)));
  EXPECT_TRUE(rf_equal(p2b.y.coeff(5), E("(alpha+1)*(3*alpha+1)/112", c)));
  EXPECT_TRUE(p2b.y.coeff(3).is_zero());
  auto p34 = expand_symmetric(*find_symmetric_case("p34-sym-c"), 7);
  EXPECT_TRUE(rf_equal(p34.y.coeff(1), E("1/2", c)));
  EXPECT_TRUE(rf_equal(p34.y.coeff(4), E("-(4*a^2-9)/224", c)));
  EXPECT_TRUE(rf_equal(p34.y.coeff(7), E("-(4*a^2-9)/5600", c)));
  auto p34b = expand_symmetric(*find_symmetric_case("p34-sym-b"), 7);
  EXPECT_TRUE(rf_equal(p34b.y.coeff(7), E("-a*(2*a+1)*(10*a+3)/560", c)));
}

TEST(SymmetricSeries, P4LeadingCoefficientIsForced) {
  auto c = series_context();
  const auto spec = make_ode(OdeKind::P4, {{"alpha", "alpha"}, {"beta", "-8*theta0^2"}}, c);
  for (const char* lead : {"4*theta0", "-4*theta0"}) {
    auto r = symmetric_series(spec, series_from_terms({{1, lead}}, c), 2, 5);
    EXPECT_TRUE(rf_equal(r.y.coeff(1), E(lead, c)));
  }
  EXPECT_THROW(symmetric_series(spec, series_from_terms({{1, "3*theta0"}}, c), 2, 5), ObstructionError);
  auto a = expand_symmetric(*find_symmetric_case("p4-sym-a+"), 5);
  EXPECT_TRUE(rf_equal(a.y.coeff(3), E("-8*alpha*theta0/3", c)));
  EXPECT_TRUE(rf_equal(a.y.coeff(5), E("8*theta0*(alpha^2+12*theta0^2+8*theta0+1)/15", c)));
  auto b = expand_symmetric(*find_symmetric_case("p4-sym-b+"), 3);
  EXPECT_TRUE(rf_equal(b.y.coeff(1), E("2*(alpha-2)/3", c)));
  EXPECT_TRUE(rf_equal(b.y.coeff(3), E("2*(7*alpha^2-16*alpha-36*theta0^2+13)/45", c)));
}

TEST(SymmetricSeries, ReexpansionKeepsLowerTerms) {
  const auto& sc = *find_symmetric_case("p2-sym-b");
  auto c = series_context();
  const auto spec = make_ode(sc.kind, sc.params, c);
  auto lo = symmetric_series(spec, series_from_terms(sc.seed, c), sc.stride, 8);
  auto hi = symmetric_series(spec, lo.y, sc.stride, 17);
  EXPECT_GT(hi.y.precision(), lo.y.precision());
  for (const auto& [n, v] : lo.y.terms()) EXPECT_TRUE(rf_equal(hi.y.coeff(n), v)) << n;
  auto direct = symmetric_series(spec, series_from_terms(sc.seed, c), sc.stride, 17);
  for (const auto& [n, v] : direct.y.terms()) EXPECT_TRUE(rf_equal(hi.y.coeff(n), v)) << n;
}

TEST(SymmetricSeries, PrintedDisagreementsAreReported) {
  std::set<std::string> flagged;
  for (const auto& sc : symmetric_cases()) {
    auto chk = check_symmetric(sc, 24);
    EXPECT_EQ(chk.status, Status::Pass) << sc.id << ": " << chk.detail;
    for (const auto& d : chk.discrepancies) flagged.insert(sc.id + " " + d.field);
  }
  const std::set<std::string> expected{"p2-sym-a t^8",  "p2-sym-b t^3",  "p2-sym-c t^3",  "p34-sym-b t^7",
                                       "p4-sym-a+ t^5", "p4-sym-a- t^5", "p4-sym-b+ t^3", "p4-sym-b+ t^5",
                                       "p4-sym-b- t^3", "p4-sym-b- t^5"};
  EXPECT_EQ(flagged, expected);
}

TEST(ClosedForms, AllVanishExactly) {
  for (const auto& n : named_solutions()) {
    auto chk = check_solution(n);
    EXPECT_EQ(chk.status, Status::Pass) << n.id << ": " << chk.detail;
  }
}

TEST(ClosedForms, PrintedVariantsFail) {
  std::set<std::string> ids;
  for (const auto& n : named_solutions())
    for (const auto& d : check_solution(n).discrepancies) ids.insert(n.id + " " + d.field);
  EXPECT_EQ(ids, (std::set<std::string>{"p3p-d6-alg ode", "p3p-d7-alg ode", "p5-lag params", "degp5-alg params"}));
}

TEST(Riccati, AiryRecurrence) {
  auto c = series_context();
  const auto& rc = riccati_cases().front();
  auto v = linear_series(rc.ode, RF(c), 8);
  EXPECT_TRUE(rf_equal(v.coeff(1), E("c", c)));
  EXPECT_TRUE(v.coeff(2).is_zero());
  EXPECT_TRUE(rf_equal(v.coeff(3), E("-1/12", c)));
  EXPECT_TRUE(rf_equal(v.coeff(4), E("-c/24", c)));
  EXPECT_THROW(linear_series(rc.ode, E("1/2", c), 8), DomainError);
}

TEST(Riccati, VerifiedFormsVanishToOrder24) {
  for (const auto& rc : riccati_cases()) {
    auto chk = check_riccati(rc, 24);
    EXPECT_EQ(chk.status, Status::Pass) << rc.id << ": " << chk.detail;
    EXPECT_EQ(chk.discrepancies.size(), 1u) << rc.id;
  }
}

TEST(Relations, AllHold) {
  auto rel = relation_checks(24);
  EXPECT_EQ(rel.size(), 8u);
  for (const auto& r : rel) EXPECT_EQ(r.status, Status::Pass) << r.id << ": " << r.detail;
  EXPECT_EQ(find_check(rel, "hamilton-p2").residual_monomials, 0u);
}
