#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvc/catalog.hpp"
#include "pvc/expr.hpp"
#include "pvc/findings.hpp"
#include "pvc/potentials.hpp"
#include "pvc/schwarzian.hpp"
#include "pvc/upoly.hpp"

namespace pvc {

struct LayerResult {
  Status status = Status::Skipped;
  std::size_t residual_monomials = 0;
  std::string residual;  // rendered, truncated
  std::string detail;
};

struct CaseReport {
  std::string id;
  LayerResult layer_a;
  LayerResult layer_b;
  LayerResult signature_check;
  LayerResult branch_check;
  std::string computed_signature;
  std::string expected_signature;
  bool degenerate_signature = false;
  std::string solution_p;
  std::vector<Discrepancy> discrepancies;
  std::string notes;

  bool passed() const {
    for (const auto* l : {&layer_a, &layer_b, &signature_check, &branch_check})
      if (l->status == Status::Fail) return false;
    return true;
  }
};

namespace detail {

inline LayerResult zero_check(const RF& residual, const std::string& what) {
  LayerResult r;
  if (rf_is_zero(residual)) {
    r.status = Status::Pass;
  } else {
    r.status = Status::Fail;
    r.residual_monomials = residual_monomials(residual);
    r.residual = truncate_text(render_expr(residual));
    r.detail = what;
  }
  return r;
}

inline std::size_t complexity(const RF& a) {
  if (a.is_zero()) return 0;
  return a.numerator().size() + a.factors().size();
}

/// Instantiates every variable except z at fixed generic rationals.
inline RF generic_in_z(const RF& a) {
  const auto& c = a.context();
  std::map<std::string, Rat> inst;
  for (std::size_t i = 0; i < c->arity(); ++i)
    if (c->names()[i] != "z") inst[c->names()[i]] = generic_value(i);
  return a.instantiate(inst);
}

}  // namespace detail

/// Names the printed summand whose replacement explains the difference to exact, if one does.
inline std::string describe_difference(const std::string& printed_text, const RF& exact) {
  const auto& ctx = exact.context();
  const RF printed = parse_expr(printed_text, ctx);
  const RF diff = exact - printed;
  if (diff.is_zero()) return "agrees";
  std::optional<std::string> best_term;
  std::optional<RF> best_fix;
  std::size_t best = detail::complexity(diff);
  for (auto term : split_summands(printed_text)) {
    term.erase(0, term.find_first_not_of(' '));
    term.erase(term.find_last_not_of(' ') + 1);
    RF s(ctx);
    try {
      s = parse_expr(term, ctx);
    } catch (const ParseError&) {
      continue;
    }
    const RF fix = s + diff;
    const std::size_t c = detail::complexity(fix);
    if (c < best || (c == best && !best_term)) {
      best = c;
      best_term = term;
      best_fix = fix;
    }
  }
  if (best_term && best <= detail::complexity(diff) && best_fix) {
    if (best_fix->is_zero()) return "spurious term '" + *best_term + "'";
    return "term '" + *best_term + "' should read '" + render_expr(*best_fix) + "'";
  }
  return "differs by " + truncate_text(render_expr(diff));
}

/// Source potential pulled back along the case's map (exact log-derivative route for exponential maps).
inline RF transformed_potential(const CoverCase& c, bool use_printed_map = false) {
  if (c.is_split()) {
    const RF h = parse_expr(c.source_text.at("h"), c.ctx);
    const RF& l2 = *c.log_derivative_squared;
    const RF lam = l2.derivative("z") / (l2 * Rat(2));
    return h * h * Rat(1, 4) * l2 - lam.derivative("z") * Rat(1, 2) + lam * lam * Rat(1, 4);
  }
  const RF& x = use_printed_map && c.printed_map ? *c.printed_map : *c.map;
  return pullback(*c.source_potential, x);
}

/// The unique p with dq/dt = dK/dp along q.
inline RF solve_p_from_q(PainleveKind kind, const std::map<std::string, RF>& params, const RF& q) {
  const auto& ctx = q.context();
  const auto T = painleve_template(kind, params, ctx);
  const RF kp = T.K.derivative("p");
  const RF a = kp.derivative("p");
  if (a.depends_on(ctx->require("p"))) throw DomainError("Hamilton equation for q is not linear in p");
  const RF b = kp - a * RF::variable(ctx, "p");
  const std::map<std::string, RF> at_q{{"q", q}};
  const RF aq = a.substitute(at_q);
  if (aq.is_zero()) throw DomainError("coefficient of p vanishes along q: " + render_expr(a));
  return (rf_diff_t(q) - b.substitute(at_q)) / aq;
}

/// Template potential with (q, p) and parameters substituted; t set to 0 on slices.
inline RF template_potential_at(const CoverCase& c, const std::map<std::string, RF>& params, const RF& q,
                                const RF& p, bool at_t0) {
  const auto T = painleve_template(*c.kind(), params, c.ctx);
  RF v = T.V.substitute({{"q", q}, {"p", p}});
  if (at_t0) v = v.substitute({{"s", RF(c.ctx)}});
  return v;
}

/// Branch partitions over x = 0 and x = infinity of a rational map, generic in the other variables.
inline std::pair<std::vector<int>, std::vector<int>> branch_partitions(const RF& map) {
  const RF x = detail::generic_in_z(map);
  const std::size_t zi = x.context()->require("z");
  UPoly num = UPoly::from_mpoly(x.numerator(), zi);
  UPoly den = UPoly::from_mpoly(x.denominator(), zi);
  const UPoly g = UPoly::gcd(num, den);
  num = UPoly::divmod(num, g).first;
  den = UPoly::divmod(den, g).first;
  auto parts = [](const UPoly& f) {
    std::vector<int> v;
    const auto sq = f.squarefree();
    for (std::size_t i = 0; i < sq.size(); ++i)
      for (int k = 0; k < sq[i].degree(); ++k) v.push_back(static_cast<int>(i) + 1);
    return v;
  };
  std::vector<int> mu = parts(num), nu = parts(den);
  if (den.degree() > num.degree()) mu.push_back(den.degree() - num.degree());
  if (num.degree() > den.degree()) nu.push_back(num.degree() - den.degree());
  std::sort(mu.rbegin(), mu.rend());
  std::sort(nu.rbegin(), nu.rend());
  return {mu, nu};
}

inline std::string partition_str(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "+" : "") + std::to_string(v[i]);
  return s;
}

inline CaseReport verify_case(const CoverCase& c) {
  CaseReport r;
  r.id = c.id;
  r.notes = c.notes;
  const auto kind = c.kind();
  std::optional<RF> pulled;

  // layer a: transformed source equals the target potential
  try {
    pulled = transformed_potential(c);
    r.layer_a = detail::zero_check(*pulled - c.target_potential, "transformed source minus target potential");
    if (r.layer_a.status == Status::Pass && c.slice_t0 && c.target_potential.depends_on(c.ctx->require("s"))) {
      r.layer_a.status = Status::Fail;
      r.layer_a.detail = "slice target depends on t";
    }
  } catch (const Error& e) {
    r.layer_a.status = Status::Fail;
    r.layer_a.detail = e.what();
  }

  // layer b: target equals the template along the named solution
  const bool family = kind && !c.slice_t0 && c.q;
  const bool slice_check = kind && c.slice_t0 && c.q && c.p;
  if (family || slice_check) {
    try {
      RF p = c.p ? *c.p : RF(c.ctx);
      if (family) {
        p = solve_p_from_q(*kind, c.params, *c.q);
        r.solution_p = render_expr(p);
        if (c.p && !rf_equal(p, *c.p)) throw DomainError("fixture p disagrees with p from the Hamilton equation");
      } else {
        r.solution_p = render_expr(p);
      }
      const RF v = template_potential_at(c, c.params, *c.q, p, slice_check);
      r.layer_b = detail::zero_check(v - c.target_potential,
                                     slice_check ? "template at t = 0 minus target" : "template along solution minus target");
    } catch (const Error& e) {
      r.layer_b.status = Status::Fail;
      r.layer_b.detail = e.what();
    }
  } else {
    r.layer_b.detail = c.is_classical() ? "classical target" : "no t = 0 template evaluation for this slice";
  }

  // signature
  try {
    const SingularitySignature got = signature(c.target_potential);
    const SingularitySignature want = kind ? canonical_signature(*kind) : classical_signatures().at(c.target_kind);
    r.computed_signature = got.str();
    r.expected_signature = want.str();
    if (got == want) {
      r.signature_check.status = Status::Pass;
    } else if (got.irregular_part() == want.irregular_part()) {
      r.signature_check.status = Status::Pass;
      r.degenerate_signature = true;
      r.signature_check.detail = "regular singular points absent (degenerate)";
    } else {
      r.signature_check.status = Status::Fail;
      r.signature_check.detail = "got " + got.str() + ", expected " + want.str();
    }
  } catch (const Error& e) {
    r.signature_check.status = Status::Fail;
    r.signature_check.detail = e.what();
  }

  // branch type of the map
  if (c.map) {
    try {
      auto [mu, nu] = branch_partitions(*c.map);
      std::vector<int> emu = c.mu, enu = c.nu;
      std::sort(emu.rbegin(), emu.rend());
      std::sort(enu.rbegin(), enu.rend());
      const std::string got = "(" + partition_str(mu) + "|" + partition_str(nu) + ")";
      if (mu == emu && nu == enu) {
        r.branch_check.status = Status::Pass;
      } else {
        r.branch_check.status = Status::Fail;
        r.branch_check.detail = "map has type " + got + ", declared (" + partition_str(emu) + "|" + partition_str(enu) + ")";
      }
    } catch (const Error& e) {
      r.branch_check.status = Status::Fail;
      r.branch_check.detail = e.what();
    }
  }

  // printed forms that disagree
  if (c.printed_target_text && pulled) {
    r.discrepancies.push_back({c.id, "target_potential", "printed potential: " + describe_difference(*c.printed_target_text, *pulled)});
  }
  if (c.printed_map) {
    const auto [mu, nu] = branch_partitions(*c.printed_map);
    std::string msg = "printed map has type (" + partition_str(mu) + "|" + partition_str(nu) + ")";
    try {
      const RF alt = transformed_potential(c, true);
      msg += rf_equal(alt, c.target_potential) ? " and reproduces the potential" : " and does not reproduce the potential";
    } catch (const Error& e) {
      msg += std::string("; ") + e.what();
    }
    r.discrepancies.push_back({c.id, "map", msg});
  }
  if (!c.printed_params.empty() && kind && c.q) {
    try {
      const RF p = solve_p_from_q(*kind, c.printed_params, *c.q);
      const RF v = template_potential_at(c, c.printed_params, *c.q, p, false);
      const bool ok = rf_equal(v, c.target_potential);
      std::string list;
      for (const auto& [n, val] : c.printed_params_text) list += (list.empty() ? "" : ", ") + n + "=" + val;
      r.discrepancies.push_back({c.id, "target.params",
                                 "printed parameters (" + list + ") " + (ok ? "also match" : "do not match the template")});
    } catch (const Error& e) {
      r.discrepancies.push_back({c.id, "target.params", std::string("printed parameters rejected: ") + e.what()});
    }
  }
  return r;
}

inline std::vector<CaseReport> verify_all(const std::vector<CoverCase>& cases) {
  std::vector<CaseReport> out;
  for (const auto& c : cases) out.push_back(verify_case(c));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace pvc
