#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvc/report.hpp"

namespace {

using namespace pvc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string fixtures;
  std::string json_path;
  std::string case_id;
  std::string check_id;
  std::string kind;
  std::string source;
  int max_degree = 0;
  int order = 24;
  int points = 20;
  double tol = -1.0;
  std::uint64_t seed = kDefaultSeed;
  bool all = false;
  bool printed = false;
};

std::vector<CoverCase> load(const Options& o) {
  try {
    return load_catalog(o.fixtures);
  } catch (const SchemaError& e) {
    throw UsageError(std::string("fixture error: ") + e.what());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

const CoverCase& require_case(const std::vector<CoverCase>& cases, const std::string& id) {
  const auto* c = find_case(cases, id);
  if (!c) throw UsageError("unknown case id '" + id + "'");
  return *c;
}

std::vector<CaseReport> run_verify(const Options& o, const std::vector<CoverCase>& cases) {
  if (!o.case_id.empty()) return {verify_case(require_case(cases, o.case_id))};
  return verify_all(cases);
}

TableComparison run_classify(const Options& o) {
  if (o.max_degree < 0) throw UsageError("--max-degree must be positive");
  int max_w = 3, max_dw = 6;
  if (o.source == "W") max_dw = 0;
  else if (o.source == "DW") max_w = 0;
  else if (!o.source.empty()) throw UsageError("--source must be W or DW");
  if (o.max_degree > 0) {
    if (max_w) max_w = o.max_degree;
    if (max_dw) max_dw = o.max_degree;
  }
  try {
    return reproduce_table(max_w, max_dw);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<SeriesCheck> run_series(const Options& o) {
  if (o.order < 4) throw UsageError("--order must be at least 4");
  if (o.check_id.empty()) return series_suite(o.order);
  for (const auto& c : symmetric_cases())
    if (c.id == o.check_id) return {check_symmetric(c, o.order)};
  for (const auto& n : named_solutions())
    if (n.id == o.check_id) return {check_solution(n)};
  for (const auto& r : riccati_cases())
    if (r.id == o.check_id) return {check_riccati(r, o.order)};
  for (auto& r : relation_checks(o.order))
    if (r.id == o.check_id) return {r};
  throw UsageError("unknown series check '" + o.check_id + "'");
}

std::vector<IsomonodromyResult> run_isomono(const Options& o) {
  if (o.kind.empty()) return isomonodromy_suite();
  const auto k = parse_kind(o.kind);
  if (!k) throw UsageError("unknown kind '" + o.kind + "'");
  std::vector<IsomonodromyResult> out{check_isomonodromy(*k)};
  if (o.printed) out.push_back(check_isomonodromy(*k, TemplateForm::Printed));
  return out;
}

NumericSuite run_numeric(const Options& o, const std::vector<CoverCase>& cases) {
  if (o.points < 1) throw UsageError("--points must be positive");
  if (o.case_id.empty()) {
    if (o.tol > 0) return numeric_suite(cases, o.seed, o.points, o.tol, o.tol);
    return numeric_suite(cases, o.seed, o.points);
  }
  NumericSuite s;
  if (const auto* c = find_case(cases, o.case_id)) {
    const double tol = o.tol > 0 ? o.tol : (c->is_split() ? 1e-8 : 1e-9);
    try {
      s.samples.push_back(sample_verify_cover(*c, o.points, tol, o.seed));
    } catch (const DomainError& e) {
      SampleReport r;
      r.id = c->id;
      r.status = Status::Fail;
      r.detail = e.what();
      s.samples.push_back(r);
    }
  } else if (const auto k = parse_kind(o.case_id)) {
    s.samples.push_back(compat_numeric(*k, o.points, o.tol > 0 ? o.tol : 1e-8, o.seed));
  } else {
    for (const auto& r : classical_identities(o.tol > 0 ? o.tol : 1e-10, o.seed))
      if (r.name == o.case_id) s.classical.push_back(r);
    if (s.classical.empty()) throw UsageError("unknown numeric case '" + o.case_id + "'");
  }
  return s;
}

int finish(const SuiteReport& r, const Options& o) {
  print_report(std::cout, r);
  if (!o.json_path.empty()) emit_json(r, o.json_path);
  return r.failures() == 0 ? kExitPass : kExitFail;
}

void run_list(const Options& o) {
  for (const auto& c : load(o)) {
    std::cout << c.id << "  " << source_name(c.source) << " -> " << c.target_kind;
    if (!c.is_split()) {
      std::vector<int> mu = c.mu, nu = c.nu;
      std::cout << "  (" << partition_str(mu) << "|" << partition_str(nu) << ")";
    }
    std::cout << (c.slice_t0 ? "  t=0 slice" : "") << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of rational covers, series and isomonodromy conditions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));
  Options o;
  app.add_option("--fixtures", o.fixtures, "fixture JSON (default: built-in catalog)");

  auto add_json = [&](CLI::App* s) { s->add_option("--json", o.json_path, "write the JSON report to PATH"); };
  auto add_all = [&](CLI::App* s) { s->add_flag("--all", o.all, "run every item (default)"); };

  auto* list = app.add_subcommand("list", "list catalog case ids");
  auto* verify = app.add_subcommand("verify", "exact cover identities");
  verify->add_option("--case", o.case_id, "case id");
  add_all(verify);
  add_json(verify);
  auto* classify = app.add_subcommand("classify", "enumerate branch types and compare with the reference table");
  classify->add_option("--source", o.source, "W or DW");
  classify->add_option("--max-degree", o.max_degree, "maximal cover degree");
  add_json(classify);
  auto* series = app.add_subcommand("series", "series expansions, closed-form solutions, Riccati checks, relations");
  series->add_option("--check", o.check_id, "check id");
  series->add_option("--order", o.order, "truncation order");
  add_all(series);
  add_json(series);
  auto* isomono = app.add_subcommand("isomono", "compatibility of the deformation system");
  isomono->add_option("--kind", o.kind, "P1, P2, P34, P4, P3p_D6, P3p_D7, P3p_D8, P5 or degP5");
  isomono->add_flag("--printed", o.printed, "also check the printed variant");
  add_all(isomono);
  add_json(isomono);
  auto* numeric = app.add_subcommand("numeric", "sampled floating-point cross-checks");
  numeric->add_option("--case", o.case_id, "case id, kind name or classical identity name");
  numeric->add_option("--points", o.points, "sample points");
  numeric->add_option("--tol", o.tol, "tolerance");
  numeric->add_option("--seed", o.seed, "random seed");
  add_all(numeric);
  add_json(numeric);
  auto* full = app.add_subcommand("full", "run everything");
  full->add_option("--seed", o.seed, "random seed");
  full->add_option("--order", o.order, "series truncation order");
  add_json(full);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (o.all && (!o.case_id.empty() || !o.check_id.empty() || !o.kind.empty()))
      throw UsageError("--all cannot be combined with a single id");
    SuiteReport r;
    r.seed = o.seed;
    if (*list) {
      run_list(o);
      return kExitPass;
    }
    if (*verify) {
      r.command = "verify";
      const auto cases = load(o);
      r.cases = timed(r, "verify", [&] { return run_verify(o, cases); });
    } else if (*classify) {
      r.command = "classify";
      r.classifier = timed(r, "classify", [&] { return run_classify(o); });
    } else if (*series) {
      r.command = "series";
      r.series = timed(r, "series", [&] { return run_series(o); });
    } else if (*isomono) {
      r.command = "isomono";
      r.isomonodromy = timed(r, "isomono", [&] { return run_isomono(o); });
    } else if (*numeric) {
      r.command = "numeric";
      const auto cases = load(o);
      r.numeric = timed(r, "numeric", [&] { return run_numeric(o, cases); });
    } else if (*full) {
      r.command = "full";
      const auto cases = load(o);
      Options all = o;
      r.cases = timed(r, "verify", [&] { return verify_all(cases); });
      r.classifier = timed(r, "classify", [&] { return reproduce_table(); });
      r.series = timed(r, "series", [&] { return run_series(all); });
      r.isomonodromy = timed(r, "isomono", [&] { return isomonodromy_suite(); });
      r.numeric = timed(r, "numeric", [&] { return numeric_suite(cases, o.seed); });
    }
    return finish(r, o);
  } catch (const UsageError& e) {
    std::cerr << "pvcheck: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "pvcheck: " << e.what() << '\n';
    return kExitFail;
  }
}
