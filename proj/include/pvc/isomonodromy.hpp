#pragma once

#include <future>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pvc/expr.hpp"
#include "pvc/findings.hpp"
#include "pvc/potentials.hpp"

namespace pvc {

struct HamiltonFlow {
  RF dq;
  RF dp;
};

/// (dK/dp, -dK/dq) for the template Hamiltonian.
inline HamiltonFlow hamilton_vector_field(const PainleveTemplate& T) { return {T.K.derivative("p"), -T.K.derivative("q")}; }

inline HamiltonFlow hamilton_vector_field(PainleveKind kind, const std::map<std::string, RF>& params, const ContextPtr& ctx) {
  return hamilton_vector_field(painleve_template(kind, params, ctx));
}

/// Total t-derivative along the flow.
inline RF total_t_derivative(const RF& f, const HamiltonFlow& flow) {
  return f.derivative("s") + f.derivative("q") * flow.dq + f.derivative("p") * flow.dp;
}

/// V_t - (A V_z + 2 A_z V - A_zzz / 2) with V_t taken along the flow.
inline RF compat_residual(const RF& V, const RF& A, const HamiltonFlow& flow) {
  const RF Az = A.derivative("z");
  const RF Azzz = Az.derivative("z").derivative("z");
  return total_t_derivative(V, flow) - (A * V.derivative("z") + Az * V * Rat(2) - Azzz * rat(1, 2));
}

inline RF compat_residual(const PainleveTemplate& T) { return compat_residual(T.V, T.A, hamilton_vector_field(T)); }

inline RF compat_residual(PainleveKind kind, const std::map<std::string, RF>& params, const ContextPtr& ctx,
                          TemplateForm form = TemplateForm::Verified) {
  return compat_residual(painleve_template(kind, params, ctx, form));
}

/// Numerator monomials of a residual, rendered, at most limit of them.
inline std::vector<std::string> residual_terms(const RF& r, std::size_t limit = 12) {
  std::vector<std::string> out;
  if (r.is_zero()) return out;
  const MPoly num = r.numerator();
  for (const auto& term : num.terms()) {
    if (out.size() >= limit) break;
    out.push_back(render_poly(MPoly::from_terms(r.context(), {term})));
  }
  return out;
}

struct Perturbation {
  std::string label;
  std::size_t residual_monomials = 0;
};

struct IsomonodromyResult {
  std::string kind;
  std::string form;  // verified or printed
  Status status = Status::Skipped;
  std::string dq, dp;
  std::size_t residual_monomials = 0;
  std::vector<std::string> residual_terms;
  std::vector<Perturbation> perturbations;  // each must leave a nonzero residual
  std::size_t frozen_flow_monomials = 0;    // residual with the flow replaced by zero
  std::string detail;
};

/// Additions to V used for the sensitivity check.
inline std::vector<std::pair<std::string, RF>> perturbations(const ContextPtr& ctx) {
  const RF z = RF::variable(ctx, "z");
  const RF one = RF::constant(ctx, 1);
  return {{"V + 1", one}, {"V + z", z}, {"V + 1/z^2", one / (z * z)}, {"V + t", RF::variable(ctx, "t")}};
}

inline IsomonodromyResult check_isomonodromy(PainleveKind kind, TemplateForm form = TemplateForm::Verified) {
  IsomonodromyResult out;
  out.kind = kind_name(kind);
  out.form = form == TemplateForm::Verified ? "verified" : "printed";
  try {
    const auto ctx = template_context();
    const auto T = painleve_template(kind, symbolic_params(kind, ctx), ctx, form);
    const auto flow = hamilton_vector_field(T);
    out.dq = render_expr(flow.dq);
    out.dp = render_expr(flow.dp);
    const RF R = compat_residual(T.V, T.A, flow);
    out.residual_monomials = residual_monomials(R);
    out.residual_terms = residual_terms(R);
    out.status = R.is_zero() ? Status::Pass : Status::Fail;
    if (!R.is_zero()) out.detail = "compatibility residual has " + std::to_string(out.residual_monomials) + " monomials";
    if (form == TemplateForm::Verified) {
      for (const auto& [label, d] : perturbations(ctx)) {
        const RF Rp = compat_residual(T.V + d, T.A, flow);
        out.perturbations.push_back({label, residual_monomials(Rp)});
        if (Rp.is_zero()) {
          out.status = Status::Fail;
          out.detail = "perturbation " + label + " leaves the residual zero";
        }
      }
      const HamiltonFlow frozen{RF(ctx), RF(ctx)};
      out.frozen_flow_monomials = residual_monomials(compat_residual(T.V, T.A, frozen));
    }
  } catch (const Error& e) {
    out.status = Status::Fail;
    out.detail = e.what();
  }
  return out;
}

/// Verified templates of every kind, then the printed variants that differ.
inline std::vector<IsomonodromyResult> isomonodromy_suite() {
  std::vector<std::future<IsomonodromyResult>> jobs;
  for (auto k : kAllKinds) jobs.push_back(std::async(std::launch::async, [k] { return check_isomonodromy(k); }));
  for (auto k : {PainleveKind::P4, PainleveKind::P3p_D6})
    jobs.push_back(std::async(std::launch::async, [k] { return check_isomonodromy(k, TemplateForm::Printed); }));
  std::vector<IsomonodromyResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

/// Printed variants are findings, not failures.
inline std::vector<Discrepancy> isomonodromy_discrepancies(const std::vector<IsomonodromyResult>& results) {
  std::vector<Discrepancy> out;
  for (const auto& r : results) {
    if (r.form != "printed" || r.status == Status::Pass) continue;
    std::string msg = "printed template fails compatibility (" + std::to_string(r.residual_monomials) + " residual monomials";
    if (!r.residual_terms.empty()) msg += ", e.g. " + r.residual_terms.front();
    out.push_back({r.kind, "template", msg + ")"});
  }
  return out;
}

}  // namespace pvc
