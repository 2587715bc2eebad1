#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pvc/errors.hpp"
#include "pvc/expr.hpp"
#include "pvc/rf.hpp"
#include "pvc/upoly.hpp"

namespace pvc {

// ---------------------------------------------------------------------------
// Confluent source potentials (variable z plays the role of x)

inline RF whittaker_potential(const RF& k, const RF& m) {
  const auto& c = k.context();
  RF z = RF::variable(c, "z");
  return rat(1, 4) - k / z + (m * m - rat(1, 4)) / (z * z);
}

inline RF dw_potential(const RF& m) {
  const auto& c = m.context();
  RF z = RF::variable(c, "z");
  return RF::constant(c, 1) / z + (m * m - rat(1, 4)) / (z * z);
}

inline RF euler_potential(const RF& h) {
  const auto& c = h.context();
  RF z = RF::variable(c, "z");
  return (h * h - Rat(1)) / (z * z * Rat(4));
}

// ---------------------------------------------------------------------------
// Signatures

/// Multiset of Poincare ranks, kept sorted ascending.
struct SingularitySignature {
  std::vector<Rat> ranks;

  static SingularitySignature of(std::vector<Rat> r) {
    std::sort(r.begin(), r.end());
    return {std::move(r)};
  }

  /// Parses "(0)^2(1)" or "(1/2)(3/2)"; "()" is the empty signature.
  static SingularitySignature parse(std::string_view text) {
    std::vector<Rat> r;
    std::size_t i = 0;
    auto fail = [&] { throw ParseError("bad signature '" + std::string(text) + "'", i); };
    while (i < text.size()) {
      if (text[i] == ' ') {
        ++i;
        continue;
      }
      if (text[i] != '(') fail();
      const auto close = text.find(')', i);
      if (close == std::string_view::npos) fail();
      std::string inner(text.substr(i + 1, close - i - 1));
      i = close + 1;
      if (inner.empty()) continue;
      Rat v;
      try {
        v = Rat(inner);
        v.canonicalize();
      } catch (const std::exception&) {
        fail();
      }
      int mult = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) fail();
        mult = std::stoi(std::string(text.substr(i, j - i)));
        i = j;
      }
      for (int k = 0; k < mult; ++k) r.push_back(v);
    }
    return of(std::move(r));
  }

  std::string str() const {
    if (ranks.empty()) return "()";
    std::string out;
    for (std::size_t i = 0; i < ranks.size();) {
      std::size_t j = i;
      while (j < ranks.size() && ranks[j] == ranks[i]) ++j;
      out += "(" + ranks[i].get_str() + ")";
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  /// Drop rank-0 entries (degenerate comparison).
  SingularitySignature irregular_part() const {
    std::vector<Rat> r;
    for (const auto& x : ranks)
      if (sgn(x) != 0) r.push_back(x);
    return of(std::move(r));
  }

  friend bool operator==(const SingularitySignature& a, const SingularitySignature& b) { return a.ranks == b.ranks; }
  friend std::ostream& operator<<(std::ostream& os, const SingularitySignature& s) { return os << s.str(); }
};

struct SingularPoint {
  std::string where;
  int order = 0;
  Rat rank;
  bool apparent = false;
  bool exact_location = true;
};

struct SignatureReport {
  SingularitySignature filtered;
  SingularitySignature unfiltered;
  std::vector<SingularPoint> points;
};

namespace detail {

// Laurent coefficients a_{-p}, ..., of an RF at z = 0 given the pole order p.
inline std::vector<RF> laurent_at_zero(const RF& q, std::size_t zi, int count, int& pole_order) {
  const auto& c = q.context();
  MPoly num = q.numerator(), den = q.denominator();
  auto low = [&](const MPoly& p) {
    int v = INT32_MAX;
    for (const auto& t : p.terms()) v = std::min<int>(v, t.exp[zi]);
    return v;
  };
  const int vn = low(num), vd = low(den);
  pole_order = vd - vn;
  std::vector<RF> n, d;
  const int need = count;
  for (int k = 0; k < need; ++k) n.push_back(RF::from_poly(num.coefficient(zi, vn + k)));
  for (int k = 0; k < need; ++k) d.push_back(RF::from_poly(den.coefficient(zi, vd + k)));
  if (d[0].is_zero()) throw DomainError("degenerate Laurent expansion");
  const RF inv0 = d[0].inverse();
  std::vector<RF> s;
  for (int k = 0; k < need; ++k) {
    RF acc = n[k];
    for (int j = 1; j <= k; ++j)
      if (!d[j].is_zero() && !s[k - j].is_zero()) acc = acc - d[j] * s[k - j];
    s.push_back(acc * inv0);
  }
  (void)c;
  return s;
}

}  // namespace detail

/// Frobenius test at z = c: true iff no logarithmic obstruction at resonance.
inline bool is_apparent(const RF& q, const RF& point) {
  const auto& c = q.context();
  const std::size_t zi = c->require("z");
  RF z = RF::variable(c, zi);
  RF shifted = q.substitute(std::map<std::string, RF>{{"z", z + point}});
  if (shifted.is_zero()) throw DomainError("point is not singular");
  int p = 0;
  // first probe for a_{-2}
  std::vector<RF> s = detail::laurent_at_zero(shifted, zi, 3, p);
  if (p > 2) throw DomainError("point is irregular singular");
  if (p <= 0) throw DomainError("point is not singular");
  auto a_at = [&](const std::vector<RF>& coeffs, int j) -> RF {
    const int idx = j + p;
    if (idx < 0) return RF(c);
    return coeffs.at(static_cast<std::size_t>(idx));
  };
  RF am2 = a_at(s, -2);
  if (!am2.is_constant()) throw DomainError("exponent difference is not a rational constant");
  const Rat disc = Rat(1) + 4 * am2.coefficient();
  auto root = exact_sqrt(disc);
  if (!root || !is_integer(*root) || sgn(*root) <= 0)
    throw DomainError("exponent difference is not a positive integer");
  const int n_res = static_cast<int>(root->get_num().get_si());
  s = detail::laurent_at_zero(shifted, zi, n_res + p, p);
  const Rat rho = (Rat(1) - n_res) / 2;
  std::vector<RF> cn{RF::constant(c, 1)};
  for (int n = 1; n <= n_res; ++n) {
    RF rhs(c);
    for (int j = 1; j <= n; ++j) rhs = rhs + a_at(s, j - 2) * cn[n - j];
    if (n == n_res) return rhs.is_zero();
    const Rat ind = (n + rho) * (n + rho - 1) - am2.coefficient();
    cn.push_back(rhs / ind);
  }
  return true;
}

namespace detail {

inline Rat generic_value(std::size_t i) {
  static const long nums[] = {3, -5, 7, 11, -13, 17, 19, -23, 29, 31, 37, -41};
  static const long dens[] = {7, 11, 13, 5, 17, 19, 3, 29, 23, 43, 41, 47};
  return rat(nums[i % 12], dens[i % 12]);
}

inline std::optional<int> pole_order_at(const UPoly& num, const UPoly& den, const Rat& c) {
  auto mult = [&](UPoly f) {
    int m = 0;
    while (!f.is_zero() && sgn(f.eval(c)) == 0) {
      f = UPoly::divmod(f, UPoly({-c, Rat(1)})).first;
      ++m;
    }
    return m;
  };
  return mult(den) - mult(num);
}

inline Rat rank_from_order(int ord) {
  if (ord <= 2) return 0;
  Rat r(ord, 2);
  r.canonicalize();
  return r - 1;
}

}  // namespace detail

/// Poincare-rank signature; non-z variables are instantiated at fixed generic values.
inline SignatureReport signature_report(const RF& q,
                                        const std::map<std::string, Rat>& fixed = {}) {
  const auto& c = q.context();
  const std::size_t zi = c->require("z");
  std::map<std::string, Rat> inst;
  for (std::size_t i = 0; i < c->arity(); ++i) {
    if (i == zi) continue;
    const auto& n = c->names()[i];
    auto it = fixed.find(n);
    inst[n] = it != fixed.end() ? it->second : detail::generic_value(i);
  }
  const RF qi = q.instantiate(inst);
  SignatureReport rep;
  if (qi.is_zero()) return rep;
  const RF z = RF::variable(c, zi);
  auto analyse = [&](const RF& f, const std::string& label_prefix, bool at_infinity) {
    UPoly num = UPoly::from_mpoly(f.numerator(), zi);
    UPoly den = UPoly::from_mpoly(f.denominator(), zi);
    std::vector<std::pair<Rat, int>> pts;
    int irrational_count = 0;
    std::vector<int> irrational_orders;
    if (at_infinity) {
      const int ord = den.degree() >= 0 ? *detail::pole_order_at(num, den, Rat(0)) : 0;
      if (ord > 0) pts.emplace_back(Rat(0), ord);
    } else {
      UPoly g = UPoly::gcd(num, den);
      UPoly dred = UPoly::divmod(den, g).first;
      auto sqf = dred.squarefree();
      for (std::size_t i = 0; i < sqf.size(); ++i) {
        const int ord = static_cast<int>(i) + 1;
        auto roots = sqf[i].rational_roots();
        for (const auto& r : roots) pts.emplace_back(r, ord);
        const int rest = sqf[i].degree() - static_cast<int>(roots.size());
        for (int k = 0; k < rest; ++k) irrational_orders.push_back(ord);
        irrational_count += rest;
      }
    }
    for (const auto& [pt, ord] : pts) {
      SingularPoint sp;
      sp.where = at_infinity ? "inf" : label_prefix + pt.get_str();
      sp.order = ord;
      sp.rank = detail::rank_from_order(ord);
      if (ord <= 2) {
        try {
          sp.apparent = is_apparent(f, RF::constant(c, pt));
        } catch (const DomainError&) {
          sp.apparent = false;
        }
      }
      rep.points.push_back(sp);
    }
    for (int ord : irrational_orders) {
      SingularPoint sp;
      sp.where = "algebraic";
      sp.order = ord;
      sp.rank = detail::rank_from_order(ord);
      sp.exact_location = false;
      rep.points.push_back(sp);
    }
  };
  analyse(qi, "z=", false);
  const RF w = qi.substitute(std::map<std::string, RF>{{"z", RF::constant(c, 1) / z}}) / z.pow(4);
  analyse(w, "", true);
  std::vector<Rat> all, kept;
  for (const auto& sp : rep.points) {
    all.push_back(sp.rank);
    if (!sp.apparent) kept.push_back(sp.rank);
  }
  rep.unfiltered = SingularitySignature::of(all);
  rep.filtered = SingularitySignature::of(kept);
  return rep;
}

inline SingularitySignature signature(const RF& q, bool apparent_filter = true) {
  auto r = signature_report(q);
  return apparent_filter ? r.filtered : r.unfiltered;
}

// ---------------------------------------------------------------------------
// Painleve-type templates

enum class PainleveKind { P1, P2, P34, P4, P3p_D6, P3p_D7, P3p_D8, P5, degP5 };

inline constexpr PainleveKind kAllKinds[] = {PainleveKind::P1,     PainleveKind::P2,     PainleveKind::P34,
                                             PainleveKind::P4,     PainleveKind::P3p_D6, PainleveKind::P3p_D7,
                                             PainleveKind::P3p_D8, PainleveKind::P5,     PainleveKind::degP5};

inline std::string kind_name(PainleveKind k) {
  switch (k) {
    case PainleveKind::P1: return "P1";
    case PainleveKind::P2: return "P2";
    case PainleveKind::P34: return "P34";
    case PainleveKind::P4: return "P4";
    case PainleveKind::P3p_D6: return "P3p_D6";
    case PainleveKind::P3p_D7: return "P3p_D7";
    case PainleveKind::P3p_D8: return "P3p_D8";
    case PainleveKind::P5: return "P5";
    case PainleveKind::degP5: return "degP5";
  }
  return "?";
}

inline std::optional<PainleveKind> parse_kind(std::string_view s) {
  for (auto k : kAllKinds)
    if (kind_name(k) == s) return k;
  return std::nullopt;
}

/// Canonical filtered signature of each kind.
inline SingularitySignature canonical_signature(PainleveKind k) {
  switch (k) {
    case PainleveKind::P1: return SingularitySignature::parse("(5/2)");
    case PainleveKind::P2: return SingularitySignature::parse("(3)");
    case PainleveKind::P34: return SingularitySignature::parse("(0)(3/2)");
    case PainleveKind::P4: return SingularitySignature::parse("(0)(2)");
    case PainleveKind::P3p_D6: return SingularitySignature::parse("(1)^2");
    case PainleveKind::P3p_D7: return SingularitySignature::parse("(1/2)(1)");
    case PainleveKind::P3p_D8: return SingularitySignature::parse("(1/2)^2");
    case PainleveKind::P5: return SingularitySignature::parse("(0)^2(1)");
    case PainleveKind::degP5: return SingularitySignature::parse("(0)^2(1/2)");
  }
  return {};
}

/// Parameter names each kind consumes; names absent here are fixed to zero.
inline std::vector<std::string> kind_parameters(PainleveKind k) {
  switch (k) {
    case PainleveKind::P1: return {};
    case PainleveKind::P2:
    case PainleveKind::P34: return {"alpha"};
    case PainleveKind::P4:
    case PainleveKind::P3p_D8: return {"alpha", "beta"};
    case PainleveKind::P3p_D7:
    case PainleveKind::degP5: return {"alpha", "beta", "gamma"};
    case PainleveKind::P3p_D6:
    case PainleveKind::P5: return {"alpha", "beta", "gamma", "delta"};
  }
  return {};
}

enum class TemplateForm { Verified, Printed };

struct PainleveTemplate {
  PainleveKind kind;
  std::map<std::string, RF> params;
  RF V;
  RF A;
  RF K;
  std::map<std::string, RF> constants;
};

/// Template over ctx, which must contain z, s, q, p (t = s^d).
inline PainleveTemplate painleve_template(PainleveKind kind, const std::map<std::string, RF>& params,
                                          const ContextPtr& ctx, TemplateForm form = TemplateForm::Verified) {
  const auto names = kind_parameters(kind);
  auto param = [&](const std::string& n) -> RF {
    if (std::find(names.begin(), names.end(), n) == names.end()) return RF(ctx);
    auto it = params.find(n);
    if (it == params.end()) throw DomainError(kind_name(kind) + " template needs parameter " + n);
    require_same(it->second.context(), ctx);
    return it->second;
  };
  for (const auto& [n, v] : params) {
    if (std::find(names.begin(), names.end(), n) == names.end() && !v.is_zero())
      throw DomainError(kind_name(kind) + " template does not take a nonzero " + n);
  }
  const RF z = RF::variable(ctx, "z"), t = RF::variable(ctx, "t"), q = RF::variable(ctx, "q"),
           p = RF::variable(ctx, "p");
  const RF one = RF::constant(ctx, 1);
  const RF apparent = Rat(3, 4) / ((z - q) * (z - q));
  PainleveTemplate T{kind, {}, RF(ctx), RF(ctx), RF(ctx), {}};
  for (const auto& n : names) T.params.emplace(n, param(n));
  const bool printed = form == TemplateForm::Printed;
  switch (kind) {
    case PainleveKind::P1: {
      T.K = p * p * rat(1, 2) - q.pow(3) * Rat(2) - t * q;
      T.V = z.pow(3) * Rat(4) + t * z * Rat(2) + T.K * Rat(2) + apparent - p / (z - q);
      T.A = one / ((z - q) * Rat(2));
      break;
    }
    case PainleveKind::P2: {
      const RF a = param("alpha");
      T.K = p * p * rat(1, 2) - q.pow(4) * rat(1, 2) - t * q * q * rat(1, 2) - a * q;
      T.V = z.pow(4) + t * z * z + a * z * Rat(2) + T.K * Rat(2) + apparent - p / (z - q);
      T.A = one / ((z - q) * Rat(2));
      break;
    }
    case PainleveKind::P34: {
      const RF a = param("alpha");
      T.K = -(q * p * p) + p + q * q * rat(1, 2) - t * q * rat(1, 2) + (a - Rat(1)) / (q * Rat(4));
      T.V = z * rat(1, 2) - t * rat(1, 2) + (a - Rat(1)) / (z * z * Rat(4)) - T.K / z + apparent -
            p * q / (z * (z - q));
      T.A = -(z / (z - q));
      break;
    }
    case PainleveKind::P4: {
      const RF a0 = param("beta") * rat(-1, 8) - rat(1, 4);
      const RF a1 = param("alpha") * rat(-1, 4);
      T.constants = {{"a0", a0}, {"a1", a1}};
      const RF sq = ((q + t * Rat(2)) * rat(1, 4)).pow(2);
      const RF a0_term = printed ? a0 / q : a0 * Rat(2) / q;
      T.K = q * p * p * Rat(2) - p * Rat(2) - a0_term - a1 * q * Rat(2) - q * sq * Rat(2);
      T.V = a0 / (z * z) + T.K / (z * Rat(2)) + a1 + ((z + t * Rat(2)) * rat(1, 4)).pow(2) + apparent -
            p * q / (z * (z - q));
      T.A = z * Rat(2) / (z - q);
      break;
    }
    case PainleveKind::P3p_D6:
    case PainleveKind::P3p_D7:
    case PainleveKind::P3p_D8: {
      const RF a0 = param("delta") * rat(-1, 16), a0p = param("beta") * rat(-1, 8);
      const RF ai = param("gamma") * rat(1, 16), aip = param("alpha") * rat(1, 8);
      T.constants = {{"a0", a0}, {"a0p", a0p}, {"ainf", ai}, {"ainfp", aip}};
      const RF tK = q * q * p * p - q * p - a0 * t * t / (q * q) - a0p * t / q - aip * q - ai * q * q;
      const RF tk_term = printed ? -(tK / (z * z)) : tK / (z * z);
      T.V = a0 * t * t / z.pow(4) + a0p * t / z.pow(3) + tk_term + aip / z + ai + apparent - p * q / (z * (z - q));
      T.A = q * z / (t * (z - q));
      T.K = tK / t;
      break;
    }
    case PainleveKind::P5:
    case PainleveKind::degP5: {
      const RF al = param("alpha"), be = param("beta"), ga = param("gamma"), de = param("delta");
      const RF a0 = be * rat(-1, 2) - rat(1, 4), a1 = de * rat(-1, 2), a2 = ga * rat(-1, 2);
      const RF ai = (al + be) * rat(1, 2) - rat(3, 4);
      T.constants = {{"a0", a0}, {"a1", a1}, {"a2", a2}, {"ainf", ai}};
      const RF qm = q - Rat(1), zm = z - Rat(1);
      const RF tK = q * qm * qm *
                    (-(a1 * t * t / qm.pow(4)) - a2 * t / qm.pow(3) + p * p - (one / q + one / qm) * p - ai / (qm * qm) -
                     a0 / (q * q));
      T.V = a1 * t * t / zm.pow(4) + tK / (zm * zm * z) + a2 * t / zm.pow(3) - p * qm * q / (z * zm * (z - q)) +
            ai / (zm * zm) + a0 / (z * z) + apparent;
      T.A = qm / t * z * zm / (z - q);
      T.K = tK / t;
      break;
    }
  }
  return T;
}

/// Standard template context: z, s, q, p and the four parameter names.
inline ContextPtr template_context(int root_degree = 1) {
  return VarContext::make({"z", "s", "q", "p", "alpha", "beta", "gamma", "delta"}, root_degree);
}

/// Fully symbolic parameter map for kind over ctx.
inline std::map<std::string, RF> symbolic_params(PainleveKind k, const ContextPtr& ctx) {
  std::map<std::string, RF> m;
  for (const auto& n : kind_parameters(k)) m.emplace(n, RF::variable(ctx, n));
  return m;
}

}  // namespace pvc
