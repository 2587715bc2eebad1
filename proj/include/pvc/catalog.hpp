#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvc/catalog_data.hpp"
#include "pvc/errors.hpp"
#include "pvc/expr.hpp"
#include "pvc/potentials.hpp"

namespace pvc {

enum class SourceKind { W, DW, Euler };

inline std::string source_name(SourceKind k) {
  switch (k) {
    case SourceKind::W: return "W";
    case SourceKind::DW: return "DW";
    case SourceKind::Euler: return "Euler";
  }
  return "?";
}

/// Classical targets carry no template; they are checked by signature only.
inline const std::map<std::string, SingularitySignature>& classical_signatures() {
  static const std::map<std::string, SingularitySignature> m{
      {"Weber", SingularitySignature::parse("(2)")},
      {"Kummer", SingularitySignature::parse("(0)(1)")},
      {"Airy", SingularitySignature::parse("(3/2)")},
  };
  return m;
}

/// Variables available to every fixture expression.
inline ContextPtr case_context(int root_degree) {
  return VarContext::make({"z", "s", "q", "p", "alpha", "beta", "gamma", "delta", "k", "m", "h"}, root_degree);
}

struct CoverCase {
  std::string id;
  SourceKind source = SourceKind::W;
  std::map<std::string, std::string> source_text;  // k, m, h
  int root_degree = 1;
  std::string map_text;
  std::vector<int> mu, nu;
  std::string target_kind;
  std::map<std::string, std::string> params_text;
  std::map<std::string, std::string> printed_params_text;
  std::string target_text;
  std::optional<std::string> printed_target_text, printed_map_text, log_derivative_text;
  std::optional<std::string> q_text, p_text;
  bool slice_t0 = false;
  std::string notes;

  // Parsed forms, all over ctx.
  ContextPtr ctx;
  std::optional<RF> source_potential;
  std::optional<RF> map;  // absent for exponential-type cases
  std::optional<RF> log_derivative_squared;
  RF target_potential{nullptr};
  std::optional<RF> printed_potential, printed_map;
  std::map<std::string, RF> params, printed_params;
  std::optional<RF> q, p;

  bool is_split() const { return source == SourceKind::Euler; }
  bool is_classical() const { return classical_signatures().count(target_kind) > 0; }
  std::optional<PainleveKind> kind() const { return parse_kind(target_kind); }
};

namespace detail {

inline std::string req_string(const nlohmann::json& j, const char* key, const std::string& id) {
  if (!j.contains(key)) throw SchemaError(id, std::string("missing field '") + key + "'");
  if (!j.at(key).is_string()) throw SchemaError(id, std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

inline std::optional<std::string> opt_string(const nlohmann::json& j, const char* key, const std::string& id) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_string()) throw SchemaError(id, std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

inline std::map<std::string, std::string> string_map(const nlohmann::json& j, const std::string& id,
                                                     const char* what) {
  if (!j.is_object()) throw SchemaError(id, std::string(what) + " must be an object");
  std::map<std::string, std::string> m;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw SchemaError(id, std::string(what) + "." + k + " must be an expression string");
    m.emplace(k, v.get<std::string>());
  }
  return m;
}

inline std::vector<int> partition(const nlohmann::json& j, const char* key, const std::string& id) {
  if (!j.contains(key) || !j.at(key).is_array()) throw SchemaError(id, std::string("branch.") + key + " must be an array");
  std::vector<int> v;
  for (const auto& x : j.at(key)) {
    if (!x.is_number_integer() || x.get<int>() < 1)
      throw SchemaError(id, std::string("branch.") + key + " entries must be positive integers");
    v.push_back(x.get<int>());
  }
  if (v.empty()) throw SchemaError(id, std::string("branch.") + key + " is empty");
  return v;
}

inline RF parse_field(const std::string& text, const ContextPtr& ctx, const std::string& id, const std::string& field) {
  try {
    return parse_expr(text, ctx);
  } catch (const Error& e) {
    throw SchemaError(id, "bad expression in " + field + ": " + e.what());
  }
}

inline CoverCase parse_case(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("", "case entry must be an object");
  CoverCase c;
  c.id = req_string(j, "id", "");
  if (c.id.empty()) throw SchemaError("", "empty case id");
  const std::string& id = c.id;
  if (!j.contains("source") || !j.at("source").is_object()) throw SchemaError(id, "missing field 'source'");
  const auto& src = j.at("source");
  const std::string sk = req_string(src, "kind", id);
  if (sk == "W") c.source = SourceKind::W;
  else if (sk == "DW") c.source = SourceKind::DW;
  else if (sk == "Euler") c.source = SourceKind::Euler;
  else throw SchemaError(id, "unknown source kind '" + sk + "'");
  for (const char* key : {"k", "m", "h"})
    if (auto v = opt_string(src, key, id)) c.source_text.emplace(key, *v);

  if (!j.contains("root_degree") || !j.at("root_degree").is_number_integer())
    throw SchemaError(id, "missing integer field 'root_degree'");
  c.root_degree = j.at("root_degree").get<int>();
  if (c.root_degree < 1) throw SchemaError(id, "root_degree must be positive");
  c.map_text = req_string(j, "map", id);
  if (c.source != SourceKind::Euler) {
    if (!j.contains("branch") || !j.at("branch").is_object()) throw SchemaError(id, "missing field 'branch'");
    c.mu = partition(j.at("branch"), "mu", id);
    c.nu = partition(j.at("branch"), "nu", id);
  }
  if (!j.contains("target") || !j.at("target").is_object()) throw SchemaError(id, "missing field 'target'");
  c.target_kind = req_string(j.at("target"), "kind", id);
  if (j.at("target").contains("params")) c.params_text = string_map(j.at("target").at("params"), id, "target.params");
  if (j.contains("printed_params")) c.printed_params_text = string_map(j.at("printed_params"), id, "printed_params");
  c.target_text = req_string(j, "target_potential", id);
  c.printed_target_text = opt_string(j, "printed_potential", id);
  c.printed_map_text = opt_string(j, "printed_map", id);
  c.log_derivative_text = opt_string(j, "log_derivative_squared", id);
  if (j.contains("solution") && !j.at("solution").is_null()) {
    const auto& s = j.at("solution");
    if (!s.is_object()) throw SchemaError(id, "solution must be an object");
    c.q_text = req_string(s, "q", id);
    c.p_text = opt_string(s, "p", id);
  }
  if (!j.contains("slice_t0") || !j.at("slice_t0").is_boolean()) throw SchemaError(id, "missing boolean field 'slice_t0'");
  c.slice_t0 = j.at("slice_t0").get<bool>();
  if (auto n = opt_string(j, "notes", id)) c.notes = *n;
  return c;
}

inline void resolve_case(CoverCase& c) {
  const std::string& id = c.id;
  c.ctx = case_context(c.root_degree);
  auto src = [&](const char* key) {
    auto it = c.source_text.find(key);
    if (it == c.source_text.end()) throw SchemaError(id, std::string("source needs parameter '") + key + "'");
    return parse_field(it->second, c.ctx, id, std::string("source.") + key);
  };
  switch (c.source) {
    case SourceKind::W: c.source_potential = whittaker_potential(src("k"), src("m")); break;
    case SourceKind::DW: c.source_potential = dw_potential(src("m")); break;
    case SourceKind::Euler: c.source_potential = euler_potential(src("h")); break;
  }
  if (c.source == SourceKind::Euler) {
    if (!c.log_derivative_text) throw SchemaError(id, "exponential-type case needs 'log_derivative_squared'");
    c.log_derivative_squared = parse_field(*c.log_derivative_text, c.ctx, id, "log_derivative_squared");
  } else {
    c.map = parse_field(c.map_text, c.ctx, id, "map");
    if (!c.map->depends_on(0)) throw SchemaError(id, "map does not depend on z");
    int smu = 0, snu = 0;
    for (int x : c.mu) smu += x;
    for (int x : c.nu) snu += x;
    if (smu != snu) throw SchemaError(id, "branch partitions have different sums");
  }
  if (c.printed_map_text) c.printed_map = parse_field(*c.printed_map_text, c.ctx, id, "printed_map");

  const auto kind = c.kind();
  if (!kind && !c.is_classical()) throw SchemaError(id, "unknown target kind '" + c.target_kind + "'");
  for (const auto& [k, v] : c.params_text) c.params.emplace(k, parse_field(v, c.ctx, id, "target.params." + k));
  for (const auto& [k, v] : c.printed_params_text)
    c.printed_params.emplace(k, parse_field(v, c.ctx, id, "printed_params." + k));
  if (kind) {
    for (const auto& n : kind_parameters(*kind))
      if (!c.params.count(n)) throw SchemaError(id, "target.params lacks '" + n + "'");
  }
  c.target_potential = parse_field(c.target_text, c.ctx, id, "target_potential");
  if (c.printed_target_text) c.printed_potential = parse_field(*c.printed_target_text, c.ctx, id, "printed_potential");
  if (c.q_text) c.q = parse_field(*c.q_text, c.ctx, id, "solution.q");
  if (c.p_text) c.p = parse_field(*c.p_text, c.ctx, id, "solution.p");
  if (kind && !c.slice_t0 && !c.q) throw SchemaError(id, "a t-family case needs solution.q");
}

}  // namespace detail

/// Parses and validates a fixture document.
inline std::vector<CoverCase> parse_catalog(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("cases") || !doc.at("cases").is_array())
    throw SchemaError("", "document needs a 'cases' array");
  std::vector<CoverCase> out;
  std::set<std::string> seen;
  for (const auto& j : doc.at("cases")) {
    CoverCase c = detail::parse_case(j);
    if (!seen.insert(c.id).second) throw SchemaError(c.id, "duplicate case id");
    detail::resolve_case(c);
    out.push_back(std::move(c));
  }
  return out;
}

/// Built-in catalog when path is empty, otherwise the JSON file at path.
inline std::vector<CoverCase> load_catalog(const std::filesystem::path& path = {}) {
  if (path.empty()) return parse_catalog(data::kBuiltinCatalog);
  std::ifstream in(path);
  if (!in) throw Error("cannot open fixture file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

inline const CoverCase* find_case(const std::vector<CoverCase>& cases, std::string_view id) {
  for (const auto& c : cases)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace pvc
