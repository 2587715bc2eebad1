#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvc/catalog.hpp"
#include "pvc/errors.hpp"
#include "pvc/potentials.hpp"

namespace pvc {

using Partition = std::vector<int>;

struct BranchType {
  SourceKind source = SourceKind::W;
  Partition mu, nu;

  int degree() const {
    int n = 0;
    for (int x : mu) n += x;
    return n;
  }
  std::string str() const;
  friend bool operator==(const BranchType&, const BranchType&) = default;
};

inline std::string partition_text(const Partition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "+" : "") + std::to_string(p[i]);
  return s;
}

inline std::string BranchType::str() const { return "(" + partition_text(mu) + "|" + partition_text(nu) + ")"; }

/// Forced source parameters; empty m means generic.
struct ParamChoice {
  std::optional<Rat> m;
  std::optional<std::string> k;  // "0" or "+-1/2" when log-freeness needs a special k

  std::string str() const {
    if (!m) return "m generic";
    std::string s = "m=" + m->get_str();
    if (k) s += ", k=" + *k;
    return s;
  }
  friend bool operator==(const ParamChoice&, const ParamChoice&) = default;
};

enum class Classification { Family, Slice, Classical, Rejected };

inline const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Family: return "painleve-family";
    case Classification::Slice: return "t0-slice";
    case Classification::Classical: return "classical";
    case Classification::Rejected: return "rejected";
  }
  return "?";
}

struct Verdict {
  BranchType type;
  ParamChoice choice;
  bool admissible = false;
  SingularitySignature filtered;
  int extra_apparent = 0;  // E
  int apparent_total = 0;  // E plus difference-2 points over x = 0
  Classification classification = Classification::Rejected;
  std::string target;  // Painleve kind or classical name
  bool degenerate = false;
  std::string reason;
};

inline const std::vector<std::pair<std::string, SingularitySignature>>& confluent_signatures() {
  static const std::vector<std::pair<std::string, SingularitySignature>> v{
      {"Kummer", SingularitySignature::parse("(0)(1)")},   {"Bessel", SingularitySignature::parse("(0)(1/2)")},
      {"Exponential", SingularitySignature::parse("(1)")}, {"Airy", SingularitySignature::parse("(3/2)")},
      {"Weber", SingularitySignature::parse("(2)")},
  };
  return v;
}

namespace detail {

inline void partitions(int n, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  partitions(n, n, cur, out);
  return out;
}

inline bool is_sub_multiset(const std::vector<Rat>& small, const std::vector<Rat>& big) {
  std::vector<Rat> rest = big;
  for (const auto& x : small) {
    auto it = std::find(rest.begin(), rest.end(), x);
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return std::all_of(rest.begin(), rest.end(), [](const Rat& r) { return sgn(r) == 0; });
}

}  // namespace detail

/// All (mu|nu) with |mu| = |nu| = n <= max_degree; all-even DW types of degree >= 4 factor through a square.
inline std::vector<BranchType> enumerate_branch_types(SourceKind source, int max_degree, int min_degree = 1) {
  const int bound = source == SourceKind::W ? 3 : source == SourceKind::DW ? 6 : 0;
  if (max_degree > bound || max_degree < 1)
    throw DomainError("degree bound for " + source_name(source) + " is " + std::to_string(bound));
  std::vector<BranchType> out;
  for (int n = std::max(1, min_degree); n <= max_degree; ++n) {
    const auto ps = detail::partitions(n);
    for (const auto& mu : ps)
      for (const auto& nu : ps) {
        auto even = [](const Partition& p) { return std::all_of(p.begin(), p.end(), [](int x) { return x % 2 == 0; }); };
        if (source == SourceKind::DW && n >= 4 && even(mu) && even(nu)) continue;
        out.push_back({source, mu, nu});
      }
  }
  return out;
}

/// Necessary conditions from branch data and exponent arithmetic alone.
inline Verdict admissibility(const BranchType& b, const ParamChoice& choice = {}) {
  Verdict v;
  v.type = b;
  v.choice = choice;
  const int n = b.degree();
  int e = 2 * n - 2;
  for (int x : b.mu) e -= x - 1;
  for (int x : b.nu) e -= x - 1;
  v.extra_apparent = e;
  int apparent = e;
  std::vector<Rat> ranks;
  const std::optional<Rat> theta = choice.m ? std::optional<Rat>(*choice.m * 2) : std::nullopt;
  for (int mu : b.mu) {
    if (!theta) {
      ranks.push_back(0);
      continue;
    }
    const bool integral = theta->get_den() == 1;
    bool log_free = !integral;
    if (integral && b.source == SourceKind::W && choice.k) {
      log_free = (*theta == 1 && *choice.k == "0") || (*theta == 2 && *choice.k == "+-1/2");
    }
    if (!log_free) {
      ranks.push_back(0);
      continue;
    }
    const Rat diff = *theta * mu;
    if (diff == 1) continue;
    if (diff == 2) {
      ++apparent;
      continue;
    }
    if (diff.get_den() == 1) {
      v.reason = "apparent point with exponent difference " + diff.get_str();
      return v;
    }
    ranks.push_back(0);
  }
  const Rat unit = b.source == SourceKind::W ? Rat(1) : Rat(1, 2);
  for (int nu : b.nu) {
    Rat r = unit * nu;
    r.canonicalize();
    ranks.push_back(r);
  }
  v.apparent_total = apparent;
  v.filtered = SingularitySignature::of(ranks);
  if (e < 0) {
    v.reason = "negative Riemann-Hurwitz count";
    return v;
  }
  if (e >= 2 || apparent >= 2) {
    v.reason = "more than one movable apparent point";
    return v;
  }
  if (e == 0 && apparent == 0) {
    for (const auto& [name, sig] : confluent_signatures())
      if (sig == v.filtered) {
        v.admissible = true;
        v.classification = Classification::Classical;
        v.target = name;
        return v;
      }
  }
  const Classification cls = e == 1 ? Classification::Family : Classification::Slice;
  for (auto k : kAllKinds)
    if (canonical_signature(k) == v.filtered) {
      v.admissible = true;
      v.classification = cls;
      v.target = kind_name(k);
      return v;
    }
  for (auto k : kAllKinds) {
    const auto& full = canonical_signature(k).ranks;
    if (full.size() > v.filtered.ranks.size() && detail::is_sub_multiset(v.filtered.ranks, full)) {
      v.admissible = true;
      v.classification = cls;
      v.target = kind_name(k);
      v.degenerate = true;
      return v;
    }
  }
  v.reason = "signature " + v.filtered.str() + " matches no Painleve-type or confluent row";
  return v;
}

/// Parameter choices worth testing for a branch type: generic m, then theta in {1/mu, 2/mu}.
inline std::vector<ParamChoice> candidate_choices(const BranchType& b) {
  std::vector<ParamChoice> out{ParamChoice{}};
  std::vector<Rat> thetas;
  for (int mu : b.mu)
    for (int num : {1, 2}) {
      Rat t(num, mu);
      t.canonicalize();
      if (std::find(thetas.begin(), thetas.end(), t) == thetas.end()) thetas.push_back(t);
    }
  std::sort(thetas.begin(), thetas.end());
  for (const auto& t : thetas) {
    Rat m = t / 2;
    out.push_back({m, std::nullopt});
    if (b.source == SourceKind::W && t == 1) out.push_back({m, "0"});
    if (b.source == SourceKind::W && t == 2) out.push_back({m, "+-1/2"});
  }
  return out;
}

/// Admissible verdicts for one type; special choices that land in the generic verdict's category are merged.
inline std::vector<Verdict> survivors(const BranchType& b) {
  std::vector<Verdict> out;
  const auto choices = candidate_choices(b);
  const Verdict generic = admissibility(b, choices.front());
  if (generic.admissible) out.push_back(generic);
  for (std::size_t i = 1; i < choices.size(); ++i) {
    Verdict v = admissibility(b, choices[i]);
    if (!v.admissible) continue;
    if (generic.admissible &&
        (v.target == generic.target || (v.classification == Classification::Classical &&
                                         generic.classification == Classification::Classical)))
      continue;
    bool dup = false;
    for (const auto& o : out)
      if (o.target == v.target && o.classification == v.classification && o.choice.m == v.choice.m) dup = true;
    if (!dup) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference table

struct TableRow {
  SourceKind source;
  ParamChoice choice;
  Partition mu, nu;
  std::string printed_signature;
  std::string label;
  std::string case_id;
  std::optional<std::string> printed_header;  // sub-table heading when it disagrees with the row
};

inline const std::vector<TableRow>& reference_table() {
  static const std::vector<TableRow> rows{
      {SourceKind::W, {}, {2}, {2}, "(0)(2)", "P4-sym", "p4-sym", {}},
      {SourceKind::W, {Rat(1, 4), {}}, {2}, {2}, "(2)", "Weber", "weber", {}},
      {SourceKind::W, {Rat(1, 4), {}}, {2}, {1, 1}, "(1)^2", "D6-alg", "d6-alg", {}},
      {SourceKind::W, {Rat(1, 2), "0"}, {1, 1}, {2}, "(0)(2)", "P4-Her", "p4-her", {}},
      {SourceKind::DW, {}, {2}, {2}, "(0)(1)", "Kummer", "kummer2nd", {}},
      {SourceKind::DW, {}, {1, 1}, {2}, "(1)^2(2)", "P5-rat", "p5-rat", {}},
      {SourceKind::DW, {Rat(1, 4), {}}, {2}, {1, 1}, "(1/2)^2", "D8-alg", "d8-alg", {}},
      {SourceKind::W, {Rat(1, 3), {}}, {3}, {3}, "(3)", "P2-sym", "p2-sym", {}},
      {SourceKind::DW, {}, {3}, {3}, "(1)(3/2)", "P34-sym", "p34-sym", {}},
      {SourceKind::DW, {Rat(1, 6), {}}, {3}, {3}, "(3/2)", "Airy", "airy", {}},
      {SourceKind::DW, {Rat(1, 4), {}}, {2, 1}, {3}, "(0)(3/2)", "P34-rat", "p34-rat", {}},
      {SourceKind::DW, {Rat(1, 6), {}}, {3}, {2, 1}, "(1)(1/2)", "D7-alg", "d7-alg", {}},
      {SourceKind::DW, {Rat(1, 6), {}}, {3, 1}, {4}, "(3)", "P4-rat", "p4-rat", {}},
      {SourceKind::DW, {Rat(1, 5), {}}, {5}, {5}, "(5/2)", "P1-sym", "p1-sym-a", "(3+1|4)"},
      {SourceKind::DW, {Rat(1, 10), {}}, {5}, {5}, "(5/2)", "P1-sym", "p1-sym-b", "(3+1|4)"},
      {SourceKind::DW, {Rat(1, 6), {}}, {3, 3}, {6}, "(3)", "P2-rat", "p2-rat", {}},
  };
  return rows;
}

struct TableMatch {
  TableRow row;
  Verdict verdict;
  bool signature_agrees = false;
};

struct TableComparison {
  std::vector<Verdict> survivors;
  std::vector<TableMatch> matched;
  std::vector<TableRow> missing;  // printed rows with no admissible verdict
  std::vector<Verdict> extra;     // admissible verdicts absent from the printed table
  std::vector<std::string> notes; // printed column or header disagreements

  bool zero_diff() const { return missing.empty() && extra.empty(); }
};

inline std::vector<Verdict> classify(SourceKind source, int max_degree) {
  std::vector<Verdict> out;
  for (const auto& b : enumerate_branch_types(source, max_degree, 2))
    for (auto& v : survivors(b)) out.push_back(std::move(v));
  return out;
}

/// Survivors of the sieve against the printed rows; identity maps (degree 1) are not transformations.
inline TableComparison reproduce_table(int max_w = 3, int max_dw = 6) {
  TableComparison cmp;
  auto w = max_w > 0 ? classify(SourceKind::W, max_w) : std::vector<Verdict>{};
  auto dw = max_dw > 0 ? classify(SourceKind::DW, max_dw) : std::vector<Verdict>{};
  cmp.survivors = w;
  cmp.survivors.insert(cmp.survivors.end(), dw.begin(), dw.end());
  std::vector<bool> used(cmp.survivors.size(), false);
  for (const auto& row : reference_table()) {
    int n = 0;
    for (int x : row.mu) n += x;
    if (n > (row.source == SourceKind::W ? max_w : max_dw)) continue;
    bool found = false;
    for (std::size_t i = 0; i < cmp.survivors.size(); ++i) {
      const auto& v = cmp.survivors[i];
      if (used[i] || v.type.source != row.source || v.type.mu != row.mu || v.type.nu != row.nu ||
          v.choice.m != row.choice.m || v.choice.k != row.choice.k)
        continue;
      used[i] = true;
      found = true;
      TableMatch m{row, v, v.filtered == SingularitySignature::parse(row.printed_signature)};
      if (!m.signature_agrees)
        cmp.notes.push_back(row.label + " " + v.type.str() + ": printed column " + row.printed_signature +
                            ", computed " + v.filtered.str() + (v.degenerate ? " (degenerate " + v.target + ")" : ""));
      if (row.printed_header)
        cmp.notes.push_back(row.label + " " + row.choice.str() + ": printed heading " + *row.printed_header + ", computed type " + v.type.str());
      cmp.matched.push_back(std::move(m));
      break;
    }
    if (!found) cmp.missing.push_back(row);
  }
  for (std::size_t i = 0; i < cmp.survivors.size(); ++i)
    if (!used[i]) cmp.extra.push_back(cmp.survivors[i]);
  return cmp;
}

}  // namespace pvc
