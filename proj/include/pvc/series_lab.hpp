#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pvc/errors.hpp"
#include "pvc/expr.hpp"
#include "pvc/findings.hpp"
#include "pvc/rf.hpp"
#include "pvc/series.hpp"

namespace pvc {

enum class OdeKind { P1, P2, P34, P4, P3, P3p, P5, degP5 };

inline constexpr OdeKind kAllOdeKinds[] = {OdeKind::P1, OdeKind::P2,  OdeKind::P34, OdeKind::P4,
                                           OdeKind::P3, OdeKind::P3p, OdeKind::P5,  OdeKind::degP5};

inline std::string ode_name(OdeKind k) {
  switch (k) {
    case OdeKind::P1: return "P1";
    case OdeKind::P2: return "P2";
    case OdeKind::P34: return "P34";
    case OdeKind::P4: return "P4";
    case OdeKind::P3: return "P3";
    case OdeKind::P3p: return "P3p";
    case OdeKind::P5: return "P5";
    case OdeKind::degP5: return "degP5";
  }
  return "?";
}

inline std::vector<std::string> ode_parameters(OdeKind k) {
  switch (k) {
    case OdeKind::P1: return {};
    case OdeKind::P2: return {"alpha"};
    case OdeKind::P34: return {"a"};
    case OdeKind::P4: return {"alpha", "beta"};
    case OdeKind::degP5: return {"alpha", "beta", "gamma"};
    case OdeKind::P3:
    case OdeKind::P3p:
    case OdeKind::P5: return {"alpha", "beta", "gamma", "delta"};
  }
  return {};
}

/// Coefficient field for series and closed-form solutions; t = s^d.
inline ContextPtr series_context(int root_degree = 1) {
  return VarContext::make({"s", "alpha", "beta", "gamma", "delta", "a", "theta0", "h", "k0", "sigma", "c"}, root_degree);
}

struct OdeResidualSpec {
  OdeKind kind = OdeKind::P1;
  std::map<std::string, RF> params;
  bool printed_form = false;  // P3p only: the garbled printed right-hand side

  RF param(const std::string& n) const {
    auto it = params.find(n);
    if (it == params.end()) throw DomainError(ode_name(kind) + " needs parameter " + n);
    return it->second;
  }

  std::string str() const {
    std::string s = ode_name(kind) + "(";
    bool first = true;
    for (const auto& n : ode_parameters(kind)) {
      s += (first ? "" : ", ") + render_expr(param(n));
      first = false;
    }
    return s + ")";
  }
};

/// Builds an ODE from parameter expressions over ctx.
inline OdeResidualSpec make_ode(OdeKind kind, const std::map<std::string, std::string>& params, const ContextPtr& ctx) {
  OdeResidualSpec spec{kind, {}, false};
  for (const auto& n : ode_parameters(kind)) {
    auto it = params.find(n);
    if (it == params.end()) throw DomainError(ode_name(kind) + " needs parameter " + n);
    spec.params.emplace(n, parse_expr(it->second, ctx));
  }
  return spec;
}

/// Right-hand side F(y, y', t) of y'' = F; lift embeds parameter values into T.
template <class T, class Lift>
T ode_rhs(const OdeResidualSpec& spec, const T& y, const T& y1, const T& t, Lift lift) {
  auto P = [&](const char* n) { return lift(spec.param(n)); };
  const T one = lift(RF::constant(y.context(), 1));
  switch (spec.kind) {
    case OdeKind::P1: return y * y * Rat(6) + t;
    case OdeKind::P2: return y * y * y * Rat(2) + t * y + P("alpha");
    case OdeKind::P34: return y1 * y1 / (y * Rat(2)) + y * y * Rat(2) - t * y - P("a") / (y * Rat(2));
    case OdeKind::P4:
      return y1 * y1 / (y * Rat(2)) + y * y * y * rat(3, 2) + t * y * y * Rat(4) + (t * t - P("alpha")) * y * Rat(2) +
             P("beta") / y;
    case OdeKind::P3:
      return y1 * y1 / y - y1 / t + (P("alpha") * y * y + P("beta")) / t + P("gamma") * y * y * y + P("delta") / y;
    case OdeKind::P3p:
      if (spec.printed_form)
        return y1 * y1 / y - y1 / t + y * y * (P("alpha") + P("beta")) / (t * t * Rat(4)) + P("gamma") / (t * Rat(4)) +
               P("delta") / (y * Rat(4));
      return y1 * y1 / y - y1 / t + y * y * (P("alpha") + P("gamma") * y) / (t * t * Rat(4)) + P("beta") / (t * Rat(4)) +
             P("delta") / (y * Rat(4));
    case OdeKind::P5:
    case OdeKind::degP5: {
      const T ym = y - one;
      T r = (one / (y * Rat(2)) + one / ym) * y1 * y1 - y1 / t + ym * ym / (t * t) * (P("alpha") * y + P("beta") / y) +
            P("gamma") * y / t;
      if (spec.kind == OdeKind::P5) r = r + P("delta") * y * (y + one) / ym;
      return r;
    }
  }
  return y;
}

/// Multiplier M(y, t) that clears every denominator of y'' - F.
template <class T, class Lift>
T ode_multiplier(const OdeResidualSpec& spec, const T& y, const T& t, Lift lift) {
  const T one = lift(RF::constant(y.context(), 1));
  switch (spec.kind) {
    case OdeKind::P1:
    case OdeKind::P2: return one;
    case OdeKind::P34:
    case OdeKind::P4: return y * Rat(2);
    case OdeKind::P3: return t * y;
    case OdeKind::P3p: return t * t * y * Rat(4);
    case OdeKind::P5:
    case OdeKind::degP5: return t * t * y * (y - one) * Rat(2);
  }
  return one;
}

/// M * (y'' - F) written without division.
template <class T, class Lift>
T ode_cleared(const OdeResidualSpec& spec, const T& y, const T& y1, const T& y2, const T& t, Lift lift) {
  auto P = [&](const char* n) { return lift(spec.param(n)); };
  const T one = lift(RF::constant(y.context(), 1));
  switch (spec.kind) {
    case OdeKind::P1: return y2 - y * y * Rat(6) - t;
    case OdeKind::P2: return y2 - y * y * y * Rat(2) - t * y - P("alpha");
    case OdeKind::P34: return y * y2 * Rat(2) - y1 * y1 - y * y * y * Rat(4) + t * y * y * Rat(2) + P("a");
    case OdeKind::P4:
      return y * y2 * Rat(2) - y1 * y1 - y * y * y * y * Rat(3) - t * y * y * y * Rat(8) -
             (t * t - P("alpha")) * y * y * Rat(4) - P("beta") * Rat(2);
    case OdeKind::P3:
      return t * y * y2 - t * y1 * y1 + y * y1 - (P("alpha") * y * y + P("beta")) * y - P("gamma") * t * y * y * y * y -
             P("delta") * t;
    case OdeKind::P3p: {
      const T head = t * t * y * y2 * Rat(4) - t * t * y1 * y1 * Rat(4) + t * y * y1 * Rat(4);
      if (spec.printed_form)
        return head - y * y * y * (P("alpha") + P("beta")) - P("gamma") * t * y - P("delta") * t * t;
      return head - y * y * y * (P("alpha") + P("gamma") * y) - P("beta") * t * y - P("delta") * t * t;
    }
    case OdeKind::P5:
    case OdeKind::degP5: {
      const T ym = y - one;
      T r = t * t * y * ym * y2 * Rat(2) - t * t * ym * y1 * y1 - t * t * y * y1 * y1 * Rat(2) + t * y * ym * y1 * Rat(2) -
            ym * ym * ym * (P("alpha") * y * y + P("beta")) * Rat(2) - P("gamma") * t * y * y * ym * Rat(2);
      if (spec.kind == OdeKind::P5) r = r - P("delta") * t * t * y * y * (y + one) * Rat(2);
      return r;
    }
  }
  return y;
}

namespace detail {

inline TSeries lift_series(const RF& c, const TSeries& like) { return TSeries::constant(like.context(), like.root_degree(), c); }

inline TSeries t_series(const TSeries& like) { return TSeries::t(like.context(), like.root_degree()); }

}  // namespace detail

/// y'' - F(y, y', t) to the working precision of y.
inline TSeries ode_residual(const OdeResidualSpec& spec, const TSeries& y) {
  const TSeries y1 = y.derivative();
  const TSeries y2 = y1.derivative();
  const TSeries t = detail::t_series(y);
  return y2 - ode_rhs(spec, y, y1, t, [&](const RF& c) { return detail::lift_series(c, y); });
}

/// Denominator-free residual M * (y'' - F) to the working precision of y.
inline TSeries ode_residual_cleared(const OdeResidualSpec& spec, const TSeries& y) {
  const TSeries y1 = y.derivative();
  return ode_cleared(spec, y, y1, y1.derivative(), detail::t_series(y),
                     [&](const RF& c) { return detail::lift_series(c, y); });
}

/// Exact residual of a closed-form solution y(s), t = s^d.
inline RF ode_residual_exact(const OdeResidualSpec& spec, const RF& y) {
  const RF y1 = rf_diff_t(y);
  const RF y2 = rf_diff_t(y1);
  const RF t = RF::variable(y.context(), "t");
  return y2 - ode_rhs(spec, y, y1, t, [](const RF& c) { return c; });
}

/// Lowest exponent below the precision with a nonzero coefficient, or the precision.
inline int first_nonzero(const TSeries& s) { return s.valuation(); }

// ---------------------------------------------------------------------------
// Symmetric series by undetermined coefficients

struct SeriesResult {
  TSeries y;
  int residual_precision = 0;
  std::vector<int> free_orders;  // resonant orders left at zero
};

/// Series from an exact seed, terms spaced by stride up to exponent N; an inexact seed resumes at its precision.
inline SeriesResult symmetric_series(const OdeResidualSpec& spec, const TSeries& seed, int stride, int N) {
  if (seed.is_zero()) throw DomainError("empty seed");
  if (stride < 1) throw DomainError("stride must be positive");
  const auto& ctx = seed.context();
  int n = seed.is_exact() ? seed.terms().rbegin()->first + stride : seed.precision();
  TSeries y(ctx, seed.root_degree());
  for (const auto& [e, c] : seed.terms())
    if (e < n) y.set(e, c);
  SeriesResult out{y, 0, {}};
  auto residual_at = [&](const TSeries& trial, int prec) { return ode_residual(spec, trial.truncated(prec)); };
  {
    const TSeries r = residual_at(y, n);
    if (first_nonzero(r) < std::min(n - 2, r.precision()))
      throw ObstructionError("seed does not satisfy " + ode_name(spec.kind) + " at leading order",
                             first_nonzero(r));
  }
  const RF one = RF::constant(ctx, 1);
  for (; n <= N; n += stride) {
    TSeries y0 = y;
    TSeries y1 = y;
    y1.set(n, one);
    const TSeries r0 = residual_at(y0, n + 1), r1 = residual_at(y1, n + 1);
    const RF a = r0.coeff(n - 2), b = r1.coeff(n - 2) - a;
    if (b.is_zero()) {
      if (!a.is_zero()) throw ObstructionError("resonance obstruction for " + ode_name(spec.kind), n);
      out.free_orders.push_back(n);
      continue;
    }
    y.set(n, -(a / b));
  }
  out.y = y.truncated(n);
  const TSeries r = ode_residual(spec, out.y);
  if (first_nonzero(r) < r.precision())
    throw ObstructionError("series residual does not vanish", first_nonzero(r));
  out.residual_precision = r.precision();
  return out;
}

/// Exact series from (exponent, coefficient text) pairs.
inline TSeries series_from_terms(const std::vector<std::pair<int, std::string>>& terms, const ContextPtr& ctx) {
  TSeries s(ctx, ctx->root_degree());
  for (const auto& [e, text] : terms) s.set(e * ctx->root_degree(), parse_expr(text, ctx));
  return s;
}

struct SymmetricCase {
  std::string id;
  OdeKind kind;
  std::map<std::string, std::string> params;
  std::vector<std::pair<int, std::string>> seed;
  int stride;
  std::vector<std::pair<int, std::string>> printed;  // (exponent, coefficient) as printed
  std::string note;
};

inline const std::vector<SymmetricCase>& symmetric_cases() {
  static const std::vector<SymmetricCase> v{
      {"p1-sym-a", OdeKind::P1, {}, {{3, "1/6"}}, 5,
       {{3, "1/6"}, {8, "1/336"}, {13, "1/26208"}, {18, "95/224550144"}}, ""},
      {"p1-sym-b", OdeKind::P1, {}, {{-2, "1"}}, 5, {{-2, "1"}, {3, "-1/6"}, {8, "1/264"}, {13, "-1/19008"}}, ""},
      {"p2-sym-a", OdeKind::P2, {{"alpha", "alpha"}}, {{2, "alpha/2"}}, 3,
       {{2, "alpha/2"}, {5, "alpha/40"}, {8, "(10*alpha^3+alpha)/40"}}, ""},
      {"p2-sym-b", OdeKind::P2, {{"alpha", "alpha"}}, {{-1, "1"}}, 3,
       {{-1, "1"}, {3, "-(alpha+1)/4"}, {5, "(alpha+1)*(3*alpha+1)/112"}}, ""},
      {"p2-sym-c", OdeKind::P2, {{"alpha", "alpha"}}, {{-1, "-1"}}, 3,
       {{-1, "-1"}, {3, "-(alpha-1)/4"}, {5, "-(alpha-1)*(3*alpha-1)/112"}}, ""},
      {"p34-sym-a", OdeKind::P34, {{"a", "a^2"}}, {{1, "a"}}, 3,
       {{1, "a"}, {4, "a*(2*a-1)/8"}, {7, "a*(2*a-1)*(10*a-3)/560"}}, ""},
      {"p34-sym-b", OdeKind::P34, {{"a", "a^2"}}, {{1, "-a"}}, 3,
       {{1, "-a"}, {4, "a*(2*a+1)/8"}, {7, "a*(2*a+1)*(10*a+3)/560"}}, "t^7 sign printed as '-+'"},
      {"p34-sym-c", OdeKind::P34, {{"a", "a^2"}}, {{-2, "2"}}, 3,
       {{-2, "2"}, {1, "1/2"}, {4, "-(4*a^2-9)/224"}, {7, "-(4*a^2-9)/5600"}}, ""},
      {"p4-sym-a+", OdeKind::P4, {{"alpha", "alpha"}, {"beta", "-8*theta0^2"}}, {{1, "4*theta0"}}, 2,
       {{1, "4*theta0"}, {3, "-8*alpha*theta0/3"}, {5, "8*theta0*(alpha^2+12*theta0^2+theta0+1)/15"}}, ""},
      {"p4-sym-a-", OdeKind::P4, {{"alpha", "alpha"}, {"beta", "-8*theta0^2"}}, {{1, "-4*theta0"}}, 2,
       {{1, "-4*theta0"}, {3, "8*alpha*theta0/3"}, {5, "-8*theta0*(alpha^2+12*theta0^2-theta0+1)/15"}}, ""},
      {"p4-sym-b+", OdeKind::P4, {{"alpha", "alpha"}, {"beta", "-8*theta0^2"}}, {{-1, "1"}}, 2,
       {{-1, "1"}, {3, "2*(alpha-2)/3"}, {5, "-2*(-7*alpha^2+16*alpha+36*theta0^2-4)/45"}}, ""},
      {"p4-sym-b-", OdeKind::P4, {{"alpha", "alpha"}, {"beta", "-8*theta0^2"}}, {{-1, "-1"}}, 2,
       {{-1, "-1"}, {3, "2*(-alpha-2)/3"}, {5, "2*(-7*alpha^2-16*alpha+36*theta0^2-4)/45"}}, ""},
  };
  return v;
}

struct SeriesCheck {
  std::string id;
  std::string group;  // symmetric, solution, riccati, relation
  Status status = Status::Skipped;
  std::string subject;
  std::size_t residual_monomials = 0;
  std::string detail;
  std::vector<std::pair<int, std::string>> coefficients;
  std::vector<Discrepancy> discrepancies;
};

namespace detail {

inline std::string tpow(int e) { return e == 1 ? "t" : "t^" + std::to_string(e); }

inline void compare_printed(const SymmetricCase& c, const TSeries& y, SeriesCheck& out) {
  const auto& ctx = y.context();
  const int top = y.precision();
  std::optional<int> shift;  // exponent offset suggested by an earlier misplaced term
  for (const auto& [e, text] : c.printed) {
    const RF printed = parse_expr(text, ctx);
    if (e >= top) continue;
    const RF got = y.coeff(e);
    if (rf_equal(got, printed)) continue;
    std::string msg = "printed " + tpow(e) + " coefficient " + text;
    std::optional<int> elsewhere;
    for (const auto& [n, v] : y.terms())
      if (n != e && rf_equal(v, printed)) elsewhere = n;
    if (elsewhere) {
      msg += " belongs to " + tpow(*elsewhere);
      shift = *elsewhere - e;
    } else if (shift && e + *shift < top) {
      msg += "; read as the " + tpow(e + *shift) + " term, computed " + render_expr(y.coeff(e + *shift));
    } else {
      msg += ", computed " + render_expr(got);
    }
    if (!c.note.empty() && e == c.printed.back().first) msg += " (" + c.note + ")";
    out.discrepancies.push_back({c.id, tpow(e), msg});
  }
}

}  // namespace detail

inline const SymmetricCase* find_symmetric_case(std::string_view id) {
  for (const auto& c : symmetric_cases())
    if (c.id == id) return &c;
  return nullptr;
}

inline SeriesResult expand_symmetric(const SymmetricCase& c, int N) {
  const auto ctx = series_context();
  const auto spec = make_ode(c.kind, c.params, ctx);
  return symmetric_series(spec, series_from_terms(c.seed, ctx), c.stride, N);
}

inline SeriesCheck check_symmetric(const SymmetricCase& c, int N = 24) {
  SeriesCheck out;
  out.id = c.id;
  out.group = "symmetric";
  try {
    const auto ctx = series_context();
    const auto spec = make_ode(c.kind, c.params, ctx);
    out.subject = spec.str();
    const auto r = symmetric_series(spec, series_from_terms(c.seed, ctx), c.stride, N);
    for (const auto& [n, v] : r.y.terms()) out.coefficients.emplace_back(n, render_expr(v));
    out.status = Status::Pass;
    out.detail = "residual vanishes below " + detail::tpow(r.residual_precision);
    detail::compare_printed(c, r.y, out);
  } catch (const Error& e) {
    out.status = Status::Fail;
    out.detail = e.what();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form solutions, checked exactly

struct NamedSolution {
  std::string id;
  OdeKind kind;
  int root_degree;
  std::map<std::string, std::string> params;
  std::string y;
  std::optional<std::map<std::string, std::string>> printed_params;
  bool printed_p3p_form = false;
};

inline const std::vector<NamedSolution>& named_solutions() {
  static const std::vector<NamedSolution> v{
      {"p2-zero", OdeKind::P2, 1, {{"alpha", "0"}}, "0", std::nullopt},
      {"p34-rat", OdeKind::P34, 1, {{"a", "1/4"}}, "t/2", std::nullopt},
      {"p4-rat", OdeKind::P4, 1, {{"alpha", "0"}, {"beta", "-2/9"}}, "-2*t/3", std::nullopt},
      {"p4-her", OdeKind::P4, 1, {{"alpha", "0"}, {"beta", "-2"}}, "-2*t", std::nullopt},
      {"p3p-d6-alg", OdeKind::P3p, 2, {{"alpha", "a"}, {"beta", "-a"}, {"gamma", "4"}, {"delta", "-4"}}, "-s",
       std::nullopt, true},
      {"p3p-d7-alg", OdeKind::P3p, 3, {{"alpha", "0"}, {"beta", "-2"}, {"gamma", "2"}, {"delta", "0"}}, "s",
       std::nullopt, true},
      {"p3p-d8-alg", OdeKind::P3p, 2, {{"alpha", "8*h"}, {"beta", "-8*h"}, {"gamma", "0"}, {"delta", "0"}}, "-s",
       std::nullopt, true},
      {"p5-minus-one", OdeKind::P5, 1, {{"alpha", "a"}, {"beta", "-a"}, {"gamma", "0"}, {"delta", "delta"}}, "-1",
       std::nullopt},
      {"p5-lag", OdeKind::P5, 1,
       {{"alpha", "(sigma+1)^2/2"}, {"beta", "-1/2"}, {"gamma", "sigma+1"}, {"delta", "-1/2"}}, "t/(sigma+1)+1",
       std::map<std::string, std::string>{
           {"alpha", "(sigma+1)^2/2"}, {"beta", "-1/2"}, {"gamma", "-(sigma+1)"}, {"delta", "-1/2"}}},
      {"degp5-alg", OdeKind::degP5, 2, {{"alpha", "h^2/2"}, {"beta", "-1/8"}, {"gamma", "-2"}}, "1+2*s/h",
       std::map<std::string, std::string>{{"alpha", "h^2/2"}, {"beta", "-8"}, {"gamma", "-2"}}},
  };
  return v;
}

inline SeriesCheck check_solution(const NamedSolution& n) {
  SeriesCheck out;
  out.id = n.id;
  out.group = "solution";
  try {
    const auto ctx = series_context(n.root_degree);
    const auto spec = make_ode(n.kind, n.params, ctx);
    const RF y = parse_expr(n.y, ctx);
    out.subject = spec.str() + ", y = " + render_expr(y);
    const RF r = ode_residual_exact(spec, y);
    out.status = r.is_zero() ? Status::Pass : Status::Fail;
    out.residual_monomials = residual_monomials(r);
    if (!r.is_zero()) out.detail = "residual " + render_expr(r);
    if (n.printed_params) {
      const auto printed = make_ode(n.kind, *n.printed_params, ctx);
      const RF pr = ode_residual_exact(printed, y);
      if (!pr.is_zero())
        out.discrepancies.push_back({n.id, "params", "printed " + printed.str() + " leaves residual " + render_expr(pr)});
    }
    if (n.printed_p3p_form) {
      auto printed = spec;
      printed.printed_form = true;
      const RF pr = ode_residual_exact(printed, y);
      if (!pr.is_zero())
        out.discrepancies.push_back({n.id, "ode", "printed P3p right-hand side leaves residual " + render_expr(pr)});
    }
  } catch (const Error& e) {
    out.status = Status::Fail;
    out.detail = e.what();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Riccati-type solutions

/// sum_k a_k(t) u^(k) = 0 with polynomial coefficients {exponent: expression}.
struct LinearOde {
  std::string text;
  std::vector<std::map<int, std::string>> coeffs;  // index = derivative order
};

struct RiccatiForm {
  OdeKind kind;
  std::map<std::string, std::string> params;
  int t_power;        // y = coef * t^t_power * u'/u
  std::string coef;
};

struct RiccatiCase {
  std::string id;
  RiccatiForm verified;
  std::optional<RiccatiForm> printed;
  LinearOde ode;
  std::vector<std::string> exponents;  // Frobenius branches u = t^r (power series)
  std::vector<std::map<std::string, Rat>> samples{};  // exact parameter points; empty means symbolic
};

inline const std::vector<RiccatiCase>& riccati_cases() {
  static const std::vector<RiccatiCase> v{
      {"p2-airy",
       {OdeKind::P2, {{"alpha", "-1/2"}}, 0, "1"},
       RiccatiForm{OdeKind::P2, {{"alpha", "-1/2"}}, 0, "-1"},
       {"u'' + t*u/2 = 0", {{{1, "1/2"}}, {}, {{0, "1"}}}},
       {"0"}},
      {"p4-hermite-weber",
       {OdeKind::P4, {{"alpha", "1-sigma"}, {"beta", "-2*sigma^2"}}, 0, "1"},
       RiccatiForm{OdeKind::P4, {{"alpha", "1-sigma"}, {"beta", "-2*sigma^2"}}, 0, "-1"},
       {"u'' + 2*t*u' + 2*sigma*u = 0", {{{0, "2*sigma"}}, {{1, "2"}}, {{0, "1"}}}},
       {"0"}},
      {"p3-bessel",
       {OdeKind::P3, {{"alpha", "4*h"}, {"beta", "4*(h+1)"}, {"gamma", "4"}, {"delta", "-4"}}, 0, "1/2"},
       RiccatiForm{OdeKind::P3p, {{"alpha", "4*h"}, {"beta", "4*(h+1)"}, {"gamma", "4"}, {"delta", "-4"}}, 0, "1"},
       {"t*u'' + (2*h+1)*u' - 4*t*u = 0", {{{1, "-4"}}, {{0, "2*h+1"}}, {{1, "1"}}}},
       {"0", "-2*h"}},
      {"p5-laguerre",
       {OdeKind::P5, {{"alpha", "(k0+sigma)^2/2"}, {"beta", "-k0^2/2"}, {"gamma", "-(sigma+1)"}, {"delta", "-1/2"}}, 1,
        "1/(k0+sigma)"},
       RiccatiForm{OdeKind::P5,
                   {{"alpha", "(k0+sigma)^2/2"}, {"beta", "-k0^2/2"}, {"gamma", "-(sigma+1)"}, {"delta", "-1/2"}},
                   1,
                   "-1/(k0+sigma)"},
       {"t^2*u'' + t*(t-sigma-2*k0+1)*u' + k0*(k0+sigma)*u = 0",
        {{{0, "k0*(k0+sigma)"}}, {{2, "1"}, {1, "1-sigma-2*k0"}}, {{2, "1"}}}},
       {"k0", "k0+sigma"},
       {{{"k0", Rat(1, 3)}, {"sigma", Rat(2, 7)}},
        {{"k0", Rat(2)}, {"sigma", Rat(-5, 3)}},
        {{"k0", Rat(-3, 4)}, {"sigma", Rat(1, 5)}}}},
  };
  return v;
}

/// Power series v with u = t^r v solving the linear ODE; v(0) = 1, a resonant order takes the symbol c.
inline TSeries linear_series(const LinearOde& ode, const RF& r, int prec, const std::map<std::string, Rat>& at = {}) {
  const auto& ctx = r.context();
  if (ode.coeffs.size() != 3) throw DomainError("only second-order linear equations are supported");
  // t^m coefficient of t^-r D^k (t^r v) is P_k(m) v_{m+k}
  struct Term {
    int k, e;
    RF a;
  };
  std::vector<Term> terms;
  int shift = TSeries::kExact;
  for (int k = 0; k < 3; ++k)
    for (const auto& [e, text] : ode.coeffs[k]) {
      terms.push_back({k, e, parse_expr(text, ctx).instantiate(at)});
      shift = std::min(shift, e - k);
    }
  auto P = [&](int k, int m) {
    RF f = RF::constant(ctx, 1);
    for (int i = 1; i <= k; ++i) f = f * (r + Rat(m + i));
    return f;
  };
  std::vector<RF> v{RF::constant(ctx, 1)};
  bool used_c = false;
  for (int n = 0; n < prec; ++n) {
    // coefficient of t^(n + shift) in the equation, split into the v_n part and the rest
    RF lead(ctx), rest(ctx);
    for (const auto& tm : terms) {
      const int m = n + shift - tm.e;
      const int idx = m + tm.k;
      if (idx < 0 || idx > n) continue;
      const RF c = tm.a * P(tm.k, m);
      if (idx == n) lead = lead + c;
      else rest = rest + c * v[idx];
    }
    if (n == 0) {
      if (!lead.is_zero()) throw DomainError("exponent " + render_expr(r) + " is not indicial");
      continue;
    }
    if (lead.is_zero()) {
      if (!rest.is_zero()) throw DomainError("normalization impossible: logarithmic term at order " + std::to_string(n));
      if (used_c) throw DomainError("more than one free constant");
      v.push_back(RF::variable(ctx, "c"));
      used_c = true;
      continue;
    }
    v.push_back(-(rest / lead));
  }
  TSeries out(ctx, 1, prec);
  for (int n = 0; n < prec; ++n) out.set(n, v[n]);
  return out;
}

/// coef * t^power * u'/u for u = t^r v.
inline TSeries riccati_y(const RiccatiForm& f, const TSeries& v, const RF& r, const std::map<std::string, Rat>& at = {}) {
  const auto& ctx = v.context();
  const TSeries tinv = TSeries::monomial(ctx, 1, RF::constant(ctx, 1), -1);
  const TSeries logd = v.derivative() / v + tinv * r;
  return logd * TSeries::monomial(ctx, 1, parse_expr(f.coef, ctx).instantiate(at), f.t_power);
}

namespace detail {

inline OdeResidualSpec specialize(OdeResidualSpec spec, const std::map<std::string, Rat>& at) {
  for (auto& [n, v] : spec.params) v = v.instantiate(at);
  return spec;
}

inline std::string riccati_text(const RiccatiForm& f, const ContextPtr& ctx) {
  const RF c = parse_expr(f.coef, ctx);
  std::string s = rf_equal(c, RF::constant(ctx, 1))    ? ""
                  : rf_equal(c, RF::constant(ctx, -1)) ? "-"
                                                       : "(" + render_expr(c) + ")*";
  if (f.t_power) s += detail::tpow(f.t_power) + "*";
  return s + "u'/u";
}

inline std::string sample_text(const std::map<std::string, Rat>& at) {
  std::string s;
  for (const auto& [n, v] : at) s += (s.empty() ? "" : ", ") + n + "=" + v.get_str();
  return s;
}

}  // namespace detail

inline SeriesCheck check_riccati(const RiccatiCase& c, int N = 24) {
  SeriesCheck out;
  out.id = c.id;
  out.group = "riccati";
  try {
    const auto ctx = series_context();
    const auto spec = make_ode(c.verified.kind, c.verified.params, ctx);
    out.subject = spec.str() + " via " + c.ode.text;
    out.status = Status::Pass;
    std::string printed_msg;
    const std::vector<std::map<std::string, Rat>> points =
        c.samples.empty() ? std::vector<std::map<std::string, Rat>>{{}} : c.samples;
    for (const auto& at : points) {
      const auto sp = detail::specialize(spec, at);
      for (const auto& rtext : c.exponents) {
        const RF r = parse_expr(rtext, ctx).instantiate(at);
        const std::string where = "branch t^(" + rtext + ")" + (at.empty() ? "" : " at " + detail::sample_text(at));
        const TSeries v = linear_series(c.ode, r, N + 8, at);
        const TSeries res = ode_residual_cleared(sp, riccati_y(c.verified, v, r, at));
        if (res.precision() < N) throw DomainError("working precision too low for order " + std::to_string(N));
        const int bad = first_nonzero(res);
        if (bad < N) {
          out.status = Status::Fail;
          out.detail = where + ": residual " + detail::tpow(bad) + " coefficient " + render_expr(res.coeff(bad));
          break;
        }
        if (c.printed && printed_msg.empty()) {
          const auto pspec = make_ode(c.printed->kind, c.printed->params, ctx);
          const TSeries pres = ode_residual_cleared(detail::specialize(pspec, at), riccati_y(*c.printed, v, r, at));
          const int pb = first_nonzero(pres);
          if (pb < pres.precision())
            printed_msg = "printed form (" + pspec.str() + ", y = " + detail::riccati_text(*c.printed, ctx) +
                          ") fails at " + detail::tpow(pb) + " on " + where;
        }
      }
      if (out.status == Status::Fail) break;
    }
    if (out.status == Status::Pass) {
      out.detail = "cleared residual vanishes below " + detail::tpow(N);
      if (!c.samples.empty()) out.detail += " at " + std::to_string(c.samples.size()) + " exact parameter points";
    }
    if (!printed_msg.empty()) out.discrepancies.push_back({c.id, "riccati", printed_msg});
  } catch (const Error& e) {
    out.status = Status::Fail;
    out.detail = e.what();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relations between equations

namespace detail {

/// Total t-derivative on functions of the named jet variables.
struct JetDerivation {
  std::vector<std::pair<std::string, RF>> flow;  // variable, its t-derivative

  RF operator()(const RF& f) const {
    RF r = f.derivative("s");
    for (const auto& [v, d] : flow) r = r + f.derivative(v) * d;
    return r;
  }
};

inline SeriesCheck relation_result(std::string id, std::string subject, const RF& residual) {
  SeriesCheck out;
  out.id = std::move(id);
  out.group = "relation";
  out.subject = std::move(subject);
  out.status = residual.is_zero() ? Status::Pass : Status::Fail;
  out.residual_monomials = residual_monomials(residual);
  if (!residual.is_zero()) out.detail = "residual " + truncate_text(render_expr(residual));
  return out;
}

}  // namespace detail

inline SeriesCheck relation_hamilton_p2() {
  const auto ctx = VarContext::make({"s", "q", "p", "alpha"});
  const RF t = RF::variable(ctx, "s"), q = RF::variable(ctx, "q"), p = RF::variable(ctx, "p");
  const RF al = RF::variable(ctx, "alpha");
  const detail::JetDerivation D{{{"q", -(q * q) + p - t * rat(1, 2)}, {"p", p * q * Rat(2) + al + rat(1, 2)}}};
  const OdeResidualSpec spec{OdeKind::P2, {{"alpha", al}}, false};
  const RF q1 = D(q);
  return detail::relation_result("hamilton-p2", "eliminating p from the P2 Hamilton system gives P2(alpha)",
                                 D(q1) - ode_rhs(spec, q, q1, t, [](const RF& c) { return c; }));
}

inline SeriesCheck relation_hamilton_p34() {
  const auto ctx = VarContext::make({"s", "q", "p", "alpha"});
  const RF t = RF::variable(ctx, "s"), q = RF::variable(ctx, "q"), p = RF::variable(ctx, "p");
  const RF al = RF::variable(ctx, "alpha");
  const detail::JetDerivation D{{{"q", -(q * q) + p - t * rat(1, 2)}, {"p", p * q * Rat(2) + al + rat(1, 2)}}};
  const OdeResidualSpec spec{OdeKind::P34, {{"a", (al + rat(1, 2)) * (al + rat(1, 2))}}, false};
  const RF p1 = D(p);
  return detail::relation_result("hamilton-p34", "eliminating q from the P2 Hamilton system gives P34((alpha+1/2)^2)",
                                 D(p1) - ode_rhs(spec, p, p1, t, [](const RF& c) { return c; }));
}

/// y34 = y2' + y2^2 + t/2 maps each P2 symmetric series onto the matching P34((alpha+1/2)^2) series.
inline std::vector<SeriesCheck> relation_p2_p34_series(int N = 24) {
  std::vector<SeriesCheck> out;
  const auto ctx = series_context();
  const OdeResidualSpec p2{OdeKind::P2, {{"alpha", RF::variable(ctx, "alpha")}}, false};
  const RF a = parse_expr("alpha + 1/2", ctx);
  const OdeResidualSpec p34{OdeKind::P34, {{"a", a * a}}, false};
  const std::vector<std::tuple<std::string, int, std::string, int, RF>> pairs{
      {"p2-sym-a", 2, "alpha/2", 1, a}, {"p2-sym-b", -1, "1", 1, -a}, {"p2-sym-c", -1, "-1", -2, RF::constant(ctx, 2)}};
  for (const auto& [id, e2, c2, e34, c34] : pairs) {
    SeriesCheck chk;
    chk.id = "p2-to-p34:" + id;
    chk.group = "relation";
    chk.subject = "y34 = y2' + y2^2 + t/2 on " + id;
    try {
      TSeries seed2(ctx, 1), seed34(ctx, 1);
      seed2.set(e2, parse_expr(c2, ctx));
      seed34.set(e34, c34);
      const TSeries y2 = symmetric_series(p2, seed2, 3, N).y;
      const TSeries y34 = y2.derivative() + y2 * y2 + detail::t_series(y2) * rat(1, 2);
      const TSeries target = symmetric_series(p34, seed34, 3, N).y;
      const TSeries diff = y34 - target;
      const int bad = first_nonzero(diff);
      chk.status = bad < diff.precision() ? Status::Fail : Status::Pass;
      chk.detail = chk.status == Status::Pass ? "agree below " + detail::tpow(diff.precision())
                                              : "differ at " + detail::tpow(bad);
    } catch (const Error& e) {
      chk.status = Status::Fail;
      chk.detail = e.what();
    }
    out.push_back(chk);
  }
  return out;
}

/// alpha = 0, y2 = 0 gives the rational P34(1/4) solution t/2.
inline SeriesCheck relation_p2_zero_to_p34() {
  const auto ctx = series_context();
  const RF y2(ctx);
  const RF y34 = rf_diff_t(y2) + y2 * y2 + RF::variable(ctx, "t") * rat(1, 2);
  const OdeResidualSpec p34{OdeKind::P34, {{"a", RF::constant(ctx, rat(1, 4))}}, false};
  auto r = detail::relation_result("p2-zero-to-p34", "y2 = 0 maps to y34 = " + render_expr(y34) + " solving P34(1/4)",
                                   ode_residual_exact(p34, y34));
  if (!rf_equal(y34, RF::variable(ctx, "t") * rat(1, 2))) {
    r.status = Status::Fail;
    r.detail = "image is " + render_expr(y34);
  }
  return r;
}

/// x = t^2, q = t*y sends P3 solutions to P3p solutions with the same parameters.
inline SeriesCheck relation_p3_p3p() {
  const auto ctx = VarContext::make({"s", "y", "y1", "alpha", "beta", "gamma", "delta"});
  const RF t = RF::variable(ctx, "s"), y = RF::variable(ctx, "y"), y1 = RF::variable(ctx, "y1");
  std::map<std::string, RF> params;
  for (const char* n : {"alpha", "beta", "gamma", "delta"}) params.emplace(n, RF::variable(ctx, n));
  const OdeResidualSpec p3{OdeKind::P3, params, false}, p3p{OdeKind::P3p, params, false};
  auto id = [](const RF& c) { return c; };
  const detail::JetDerivation D{{{"y", y1}, {"y1", ode_rhs(p3, y, y1, t, id)}}};
  const RF q = t * y;
  const RF qx = D(q) / (t * Rat(2));
  const RF qxx = D(qx) / (t * Rat(2));
  return detail::relation_result("p3-to-p3p", "x = t^2, q = t*y maps P3 solutions to P3p solutions",
                                 qxx - ode_rhs(p3p, q, qx, t * t, id));
}

/// The deg-P5 formula applied to a P3p(D6) solution solves deg-P5(a1^2/2, -b1^2/2, -2).
inline SeriesCheck relation_p3p_degp5() {
  const auto ctx = VarContext::make({"s", "q", "q1", "a1", "b1"});
  const RF t = RF::variable(ctx, "s"), q = RF::variable(ctx, "q"), q1 = RF::variable(ctx, "q1");
  const RF a1 = RF::variable(ctx, "a1"), b1 = RF::variable(ctx, "b1");
  const OdeResidualSpec p3p{OdeKind::P3p,
                            {{"alpha", (a1 - b1) * Rat(4)},
                             {"beta", (a1 + b1 - Rat(1)) * Rat(-4)},
                             {"gamma", RF::constant(ctx, 4)},
                             {"delta", RF::constant(ctx, -4)}},
                            false};
  const OdeResidualSpec dp5{OdeKind::degP5,
                            {{"alpha", a1 * a1 * rat(1, 2)}, {"beta", b1 * b1 * rat(-1, 2)}, {"gamma", RF::constant(ctx, -2)}},
                            false};
  auto id = [](const RF& c) { return c; };
  const detail::JetDerivation D{{{"q", q1}, {"q1", ode_rhs(p3p, q, q1, t, id)}}};
  const RF ab = a1 + b1;
  const RF y = (t * q1 - q * q - ab * q - t) / (t * q1 + q * q - ab * q - t);
  const RF y1 = D(y);
  return detail::relation_result("p3p-to-degp5", "the deg-P5 formula maps P3p(D6) solutions to deg-P5 solutions",
                                 D(y1) - ode_rhs(dp5, y, y1, t, id));
}

inline std::vector<SeriesCheck> relation_checks(int N = 24) {
  std::vector<SeriesCheck> out{relation_hamilton_p2(), relation_hamilton_p34()};
  for (auto& c : relation_p2_p34_series(N)) out.push_back(std::move(c));
  out.push_back(relation_p2_zero_to_p34());
  out.push_back(relation_p3_p3p());
  out.push_back(relation_p3p_degp5());
  return out;
}

/// Every series-lab check in a fixed order.
inline std::vector<SeriesCheck> series_suite(int N = 24) {
  std::vector<std::future<SeriesCheck>> jobs;
  auto spawn = [&](auto f) { jobs.push_back(std::async(std::launch::async, f)); };
  for (const auto& r : riccati_cases()) spawn([&r, N] { return check_riccati(r, N); });
  for (const auto& c : symmetric_cases()) spawn([&c, N] { return check_symmetric(c, N); });
  for (const auto& n : named_solutions()) spawn([&n] { return check_solution(n); });
  auto relations = std::async(std::launch::async, [N] { return relation_checks(N); });
  std::vector<SeriesCheck> out;
  for (auto& j : jobs) out.push_back(j.get());
  std::rotate(out.begin(), out.begin() + static_cast<long>(riccati_cases().size()), out.end());
  for (auto& r : relations.get()) out.push_back(std::move(r));
  return out;
}

}  // namespace pvc
