#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvc/classifier.hpp"
#include "pvc/cover.hpp"
#include "pvc/findings.hpp"
#include "pvc/isomonodromy.hpp"
#include "pvc/numeric.hpp"
#include "pvc/series_lab.hpp"

#ifndef PVC_VERSION
#define PVC_VERSION "0.0.0"
#endif

namespace pvc {

inline constexpr const char* kToolVersion = PVC_VERSION;
inline constexpr int kReportSchema = 1;

struct SuiteReport {
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::vector<CaseReport>> cases;
  std::optional<TableComparison> classifier;
  std::optional<std::vector<SeriesCheck>> series;
  std::optional<std::vector<IsomonodromyResult>> isomonodromy;
  std::optional<NumericSuite> numeric;
  std::map<std::string, double> timings_ms;

  std::size_t failures() const;
  std::vector<Discrepancy> discrepancies() const;
};

/// Wall-clock milliseconds spent in f, recorded under name.
template <class F>
auto timed(SuiteReport& r, const std::string& name, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto out = f();
  r.timings_ms[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// ---------------------------------------------------------------------------
// Failure and discrepancy accounting

inline std::size_t classifier_failures(const TableComparison& c) { return c.missing.size(); }

/// Admissible rows absent from the printed table and printed column disagreements.
inline std::vector<Discrepancy> classifier_discrepancies(const TableComparison& c) {
  std::vector<Discrepancy> out;
  for (const auto& v : c.extra)
    out.push_back({source_name(v.type.source) + " " + v.type.str() + " " + v.choice.str(), "table",
                   "admissible " + std::string(classification_name(v.classification)) + " (" + v.target + ", " +
                       v.filtered.str() + ") absent from the printed table"});
  for (const auto& n : c.notes) out.push_back({"table", "column", n});
  return out;
}

inline std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  if (cases)
    for (const auto& c : *cases) n += !c.passed();
  if (classifier) n += classifier_failures(*classifier);
  if (series)
    for (const auto& s : *series) n += s.status == Status::Fail;
  if (isomonodromy)
    for (const auto& r : *isomonodromy) n += r.form == "verified" && r.status == Status::Fail;
  if (numeric) n += numeric->failures();
  return n;
}

inline std::vector<Discrepancy> SuiteReport::discrepancies() const {
  std::vector<Discrepancy> out;
  auto add = [&](const std::vector<Discrepancy>& d) { out.insert(out.end(), d.begin(), d.end()); };
  if (cases)
    for (const auto& c : *cases) add(c.discrepancies);
  if (classifier) add(classifier_discrepancies(*classifier));
  if (series)
    for (const auto& s : *series) add(s.discrepancies);
  if (isomonodromy) add(isomonodromy_discrepancies(*isomonodromy));
  if (numeric) add(numeric->discrepancies());
  return out;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

inline json to_json(const Discrepancy& d) { return {{"subject", d.subject}, {"field", d.field}, {"message", d.message}}; }

inline json to_json(const LayerResult& l) {
  return {{"status", status_name(l.status)},
          {"residual_monomials", l.residual_monomials},
          {"residual", l.residual},
          {"detail", l.detail}};
}

inline json to_json(const CaseReport& c) {
  json failed = json::array();
  const std::pair<const char*, const LayerResult*> layers[] = {
      {"a", &c.layer_a}, {"b", &c.layer_b}, {"signature", &c.signature_check}, {"branch", &c.branch_check}};
  for (const auto& [name, l] : layers)
    if (l->status == Status::Fail)
      failed.push_back({{"layer", name}, {"residual_monomials", l->residual_monomials}, {"detail", l->detail}});
  json d = json::array();
  for (const auto& x : c.discrepancies) d.push_back(to_json(x));
  return {{"id", c.id},
          {"status", c.passed() ? "pass" : "fail"},
          {"layer_a", to_json(c.layer_a)},
          {"layer_b", to_json(c.layer_b)},
          {"signature", to_json(c.signature_check)},
          {"branch", to_json(c.branch_check)},
          {"computed_signature", c.computed_signature},
          {"expected_signature", c.expected_signature},
          {"degenerate_signature", c.degenerate_signature},
          {"solution_p", c.solution_p},
          {"failed_layers", failed},
          {"discrepancies", d}};
}

inline json to_json(const Verdict& v) {
  return {{"source", source_name(v.type.source)},
          {"type", v.type.str()},
          {"choice", v.choice.str()},
          {"signature", v.filtered.str()},
          {"classification", classification_name(v.classification)},
          {"target", v.target},
          {"degenerate", v.degenerate}};
}

inline json to_json(const TableComparison& c) {
  json matched = json::array(), missing = json::array(), extra = json::array();
  for (const auto& m : c.matched) {
    json j = to_json(m.verdict);
    j["label"] = m.row.label;
    j["case"] = m.row.case_id;
    j["printed_signature"] = m.row.printed_signature;
    j["signature_agrees"] = m.signature_agrees;
    matched.push_back(j);
  }
  for (const auto& r : c.missing)
    missing.push_back({{"label", r.label},
                       {"source", source_name(r.source)},
                       {"type", "(" + partition_text(r.mu) + "|" + partition_text(r.nu) + ")"},
                       {"choice", r.choice.str()}});
  for (const auto& v : c.extra) extra.push_back(to_json(v));
  return {{"survivors", c.survivors.size()},
          {"matched", matched},
          {"missing", missing},
          {"extra", extra},
          {"notes", c.notes},
          {"zero_diff", c.zero_diff()}};
}

inline json to_json(const SeriesCheck& s) {
  json coeffs = json::array();
  for (const auto& [k, v] : s.coefficients) coeffs.push_back({{"order", k}, {"value", v}});
  json d = json::array();
  for (const auto& x : s.discrepancies) d.push_back(to_json(x));
  return {{"id", s.id},
          {"group", s.group},
          {"status", status_name(s.status)},
          {"subject", s.subject},
          {"residual_monomials", s.residual_monomials},
          {"detail", s.detail},
          {"coefficients", coeffs},
          {"discrepancies", d}};
}

inline json to_json(const IsomonodromyResult& r) {
  json p = json::array();
  for (const auto& x : r.perturbations) p.push_back({{"label", x.label}, {"residual_monomials", x.residual_monomials}});
  return {{"kind", r.kind},
          {"form", r.form},
          {"status", status_name(r.status)},
          {"dq_dt", r.dq},
          {"dp_dt", r.dp},
          {"residual_monomials", r.residual_monomials},
          {"residual_terms", r.residual_terms},
          {"perturbations", p},
          {"frozen_flow_monomials", r.frozen_flow_monomials},
          {"detail", r.detail}};
}

inline json to_json(const SampleReport& s) {
  json j{{"id", s.id},
         {"kind", s.kind},
         {"status", status_name(s.status)},
         {"points", s.points},
         {"rejected", s.rejected},
         {"max_error", s.max_error},
         {"tol", s.tol},
         {"detail", s.detail}};
  j["route_gap"] = s.route_gap ? json(*s.route_gap) : json(nullptr);
  j["printed_error"] = s.printed_error ? json(*s.printed_error) : json(nullptr);
  return j;
}

inline json to_json(const ClassicalReport& c) {
  return {{"name", c.name}, {"status", status_name(c.status)}, {"points", c.points}, {"max_error", c.max_error}, {"tol", c.tol}};
}

inline json to_json(const SuiteReport& r) {
  json j{{"tool", "pvcheck"},
         {"version", kToolVersion},
         {"schema", kReportSchema},
         {"command", r.command},
         {"seed", r.seed},
         {"failures", r.failures()}};
  auto list = [](const auto& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
  };
  j["cases"] = r.cases ? list(*r.cases) : json(nullptr);
  j["classifier"] = r.classifier ? to_json(*r.classifier) : json(nullptr);
  j["series"] = r.series ? list(*r.series) : json(nullptr);
  j["isomonodromy"] = r.isomonodromy ? list(*r.isomonodromy) : json(nullptr);
  if (r.numeric) j["numeric"] = {{"samples", list(r.numeric->samples)}, {"classical", list(r.numeric->classical)}};
  else j["numeric"] = nullptr;
  j["discrepancies"] = list(r.discrepancies());
  j["timings_ms"] = r.timings_ms;
  return j;
}

inline void emit_json(const SuiteReport& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(r).dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Text

namespace detail {

inline const char* mark(Status s) {
  switch (s) {
    case Status::Pass: return "[ok]  ";
    case Status::Fail: return "[FAIL]";
    case Status::Skipped: return "[--]  ";
  }
  return "";
}

inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace detail

inline void print_cases(std::ostream& os, const std::vector<CaseReport>& cases) {
  os << "cover identities\n";
  for (const auto& c : cases) {
    os << "  " << detail::mark(c.passed() ? Status::Pass : Status::Fail) << ' ' << c.id << "  a:" << status_name(c.layer_a.status)
       << " b:" << status_name(c.layer_b.status) << " sig:" << status_name(c.signature_check.status) << " " << c.computed_signature
       << (c.degenerate_signature ? " (degenerate)" : "") << " branch:" << status_name(c.branch_check.status) << '\n';
    for (const auto* l : {&c.layer_a, &c.layer_b, &c.signature_check, &c.branch_check})
      if (l->status == Status::Fail) os << "         " << l->detail << (l->residual.empty() ? "" : ": " + l->residual) << '\n';
  }
}

inline void print_classifier(std::ostream& os, const TableComparison& c) {
  os << "covering table (" << c.survivors.size() << " admissible types)\n";
  for (const auto& m : c.matched)
    os << "  " << (m.signature_agrees ? "[ok]  " : "[diff]") << ' ' << source_name(m.verdict.type.source) << ' '
       << m.verdict.type.str() << ' ' << m.verdict.choice.str() << "  " << m.verdict.filtered.str() << "  " << m.row.label
       << (m.signature_agrees ? "" : "  (printed column " + m.row.printed_signature + ")") << '\n';
  for (const auto& r : c.missing)
    os << "  [FAIL] missing printed row " << r.label << " (" << partition_text(r.mu) << "|" << partition_text(r.nu) << ")\n";
  for (const auto& v : c.extra)
    os << "  [new] " << source_name(v.type.source) << ' ' << v.type.str() << ' ' << v.choice.str() << "  " << v.filtered.str()
       << "  " << v.target << " (" << classification_name(v.classification) << "), not in the printed table\n";
}

inline void print_series(std::ostream& os, const std::vector<SeriesCheck>& s) {
  os << "series and solutions\n";
  for (const auto& c : s) {
    os << "  " << detail::mark(c.status) << ' ' << c.id << "  " << truncate_text(c.subject, 100) << '\n';
    if (c.status == Status::Fail) os << "         " << truncate_text(c.detail) << '\n';
  }
}

inline void print_isomonodromy(std::ostream& os, const std::vector<IsomonodromyResult>& rs) {
  os << "isomonodromy\n";
  for (const auto& r : rs) {
    os << "  " << detail::mark(r.status) << ' ' << r.kind << " (" << r.form << ")  residual monomials " << r.residual_monomials;
    if (r.form == "verified") {
      std::size_t least = 0;
      for (const auto& p : r.perturbations) least = least == 0 ? p.residual_monomials : std::min(least, p.residual_monomials);
      os << ", perturbed >= " << least << ", frozen flow " << r.frozen_flow_monomials;
    }
    os << '\n';
  }
}

inline void print_numeric(std::ostream& os, const NumericSuite& n) {
  os << "numeric cross-checks\n";
  for (const auto& s : n.samples) {
    os << "  " << detail::mark(s.status) << ' ' << s.id << " (" << s.kind << ")  " << s.points << " points, max error "
       << detail::fmt_double(s.max_error);
    if (s.route_gap) os << ", route gap " << detail::fmt_double(*s.route_gap);
    if (s.printed_error) os << ", printed " << detail::fmt_double(*s.printed_error);
    os << (s.detail.empty() ? "" : "  " + s.detail) << '\n';
  }
  for (const auto& c : n.classical)
    os << "  " << detail::mark(c.status) << ' ' << c.name << "  max error " << detail::fmt_double(c.max_error) << '\n';
}

inline void print_report(std::ostream& os, const SuiteReport& r) {
  if (r.cases) print_cases(os, *r.cases);
  if (r.classifier) print_classifier(os, *r.classifier);
  if (r.series) print_series(os, *r.series);
  if (r.isomonodromy) print_isomonodromy(os, *r.isomonodromy);
  if (r.numeric) print_numeric(os, *r.numeric);
  const auto d = r.discrepancies();
  if (!d.empty()) {
    os << "printed-form discrepancies (" << d.size() << ")\n";
    for (const auto& x : d) os << "  " << x.subject << " [" << x.field << "] " << truncate_text(x.message, 300) << '\n';
  }
  os << "failures: " << r.failures() << '\n';
}

}  // namespace pvc
