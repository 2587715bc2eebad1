#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pvc/context.hpp"
#include "pvc/errors.hpp"
#include "pvc/mpoly.hpp"
#include "pvc/rat.hpp"

namespace pvc {

using Complex = std::complex<double>;

/// Exact rational function stored as coefficient times a product of monic
/// polynomial bases raised to nonzero integer exponents.
class RF {
 public:
  struct Factor {
    MPoly base;
    int exp;
  };

  explicit RF(ContextPtr ctx) : ctx_(std::move(ctx)), coef_(0) {}

  static RF constant(ContextPtr ctx, const Rat& c) {
    RF r(std::move(ctx));
    r.coef_ = c;
    return r;
  }

  static RF variable(ContextPtr ctx, std::size_t index) {
    RF r(ctx);
    r.coef_ = 1;
    r.factors_.push_back({MPoly::variable(ctx, index), 1});
    return r;
  }

  /// Variable by name; "t" maps to s^d.
  static RF variable(const ContextPtr& ctx, std::string_view name) {
    if (name == "t") {
      auto s = ctx->index_of("s");
      if (!s) throw ContextError("'t' used in a context without s");
      return variable(ctx, *s).pow(ctx->root_degree());
    }
    return variable(ctx, ctx->require(name));
  }

  static RF from_poly(const MPoly& p) {
    RF r(p.context());
    if (p.is_zero()) return r;
    r.coef_ = 1;
    absorb(r, p);
    return r;
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  bool is_zero() const noexcept { return sgn(coef_) == 0; }
  const Rat& coefficient() const noexcept { return coef_; }
  std::span<const Factor> factors() const noexcept { return factors_; }

  bool is_constant() const noexcept { return is_zero() || factors_.empty(); }
  bool is_polynomial() const noexcept {
    return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.exp > 0; });
  }

  MPoly numerator() const {
    MPoly out = MPoly::constant(ctx_, coef_);
    if (is_zero()) return out;
    for (const auto& f : factors_)
      if (f.exp > 0) out = out * f.base.pow(static_cast<unsigned>(f.exp));
    return out;
  }

  MPoly denominator() const {
    MPoly out = MPoly::constant(ctx_, 1);
    for (const auto& f : factors_)
      if (f.exp < 0) out = out * f.base.pow(static_cast<unsigned>(-f.exp));
    return out;
  }

  bool depends_on(std::size_t var) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [var](const Factor& f) { return f.base.depends_on(var); });
  }

  RF operator-() const {
    RF r = *this;
    r.coef_ = -r.coef_;
    return r;
  }

  friend RF operator+(const RF& a, const RF& b) { return sum(a, b, false); }
  friend RF operator-(const RF& a, const RF& b) { return sum(a, b, true); }

  friend RF operator*(const RF& a, const RF& b) {
    require_same(a.ctx_, b.ctx_);
    RF r(a.ctx_);
    if (a.is_zero() || b.is_zero()) return r;
    r.coef_ = a.coef_ * b.coef_;
    r.factors_ = a.factors_;
    for (const auto& f : b.factors_) insert_factor(r.factors_, f.base, f.exp);
    return r;
  }

  friend RF operator*(const RF& a, const Rat& c) {
    RF r = a;
    if (sgn(c) == 0) return RF(a.ctx_);
    r.coef_ *= c;
    return r;
  }
  friend RF operator*(const Rat& c, const RF& a) { return a * c; }

  RF inverse() const {
    if (is_zero()) throw DivisionByZero("division by the zero rational function");
    RF r = *this;
    r.coef_ = 1 / coef_;
    for (auto& f : r.factors_) f.exp = -f.exp;
    return r;
  }

  friend RF operator/(const RF& a, const RF& b) {
    require_same(a.ctx_, b.ctx_);
    if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
    RF r = a * b.inverse();
    r.cancel_cross();
    return r;
  }

  friend RF operator/(const RF& a, const Rat& c) {
    if (sgn(c) == 0) throw DivisionByZero("division by zero constant");
    return a * Rat(1 / c);
  }

  RF& operator+=(const RF& o) { return *this = *this + o; }
  RF& operator-=(const RF& o) { return *this = *this - o; }
  RF& operator*=(const RF& o) { return *this = *this * o; }
  RF& operator/=(const RF& o) { return *this = *this / o; }

  RF pow(int e) const {
    if (e == 0) return constant(ctx_, 1);
    if (is_zero()) {
      if (e < 0) throw DivisionByZero("negative power of zero");
      return *this;
    }
    RF r(ctx_);
    r.coef_ = rat_pow(coef_, e);
    r.factors_ = factors_;
    for (auto& f : r.factors_) f.exp *= e;
    check_degree(r);
    return r;
  }

  /// Partial derivative with respect to variable index var.
  RF derivative(std::size_t var) const {
    RF r(ctx_);
    if (is_zero()) return r;
    std::vector<std::size_t> deps;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].base.depends_on(var)) deps.push_back(i);
    if (deps.empty()) return r;
    MPoly s(ctx_);
    for (std::size_t a = 0; a < deps.size(); ++a) {
      const auto& fa = factors_[deps[a]];
      MPoly term = fa.base.derivative(var) * Rat(fa.exp);
      for (std::size_t b = 0; b < deps.size(); ++b)
        if (b != a) term = term * factors_[deps[b]].base;
      s = s + term;
    }
    if (s.is_zero()) return r;
    r.coef_ = coef_;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const bool dep = std::find(deps.begin(), deps.end(), i) != deps.end();
      const int e = dep ? factors_[i].exp - 1 : factors_[i].exp;
      if (e != 0) r.factors_.push_back({factors_[i].base, e});
    }
    absorb(r, s);
    return r;
  }

  RF derivative(std::string_view name) const { return derivative(ctx_->require(name)); }

  /// Simultaneous substitution; values[i] replaces variable i, unbound variables
  /// map to the same-named variable of target.
  RF substitute(const std::vector<std::optional<RF>>& values, const ContextPtr& target) const {
    std::vector<std::optional<RF>> vals(ctx_->arity());
    for (std::size_t i = 0; i < ctx_->arity(); ++i) {
      if (i < values.size() && values[i]) {
        require_same(values[i]->context(), target);
        vals[i] = values[i];
      }
    }
    RF out = constant(target, coef_);
    if (is_zero()) return out;
    for (const auto& f : factors_) {
      RF v = substitute_poly(f.base, vals, target);
      if (v.is_zero()) {
        if (f.exp < 0) throw DivisionByZero("substitution makes a denominator vanish");
        return RF(target);
      }
      out = out * v.pow(f.exp);
    }
    out.cancel_cross();
    return out;
  }

  RF substitute(const std::map<std::string, RF>& bindings) const {
    return substitute(bindings, ctx_);
  }

  RF substitute(const std::map<std::string, RF>& bindings, const ContextPtr& target) const {
    std::vector<std::optional<RF>> vals(ctx_->arity());
    for (const auto& [name, v] : bindings) {
      auto i = ctx_->index_of(name);
      if (!i) throw ContextError("substitution target '" + name + "' not in context");
      vals[*i] = v;
    }
    return substitute(vals, target);
  }

  RF instantiate(const std::map<std::string, Rat>& values) const {
    std::map<std::string, RF> b;
    for (const auto& [n, v] : values)
      if (ctx_->index_of(n)) b.emplace(n, constant(ctx_, v));
    return substitute(b);
  }

  Complex eval(std::span<const Complex> values) const {
    if (is_zero()) return 0.0;
    Complex acc = to_double(coef_);
    for (const auto& f : factors_) {
      Complex v = f.base.evaluate<Complex>(values);
      if (f.exp < 0 && std::abs(v) < 1e-300) throw DomainError("denominator vanishes at evaluation point");
      acc *= std::pow(v, f.exp);
    }
    return acc;
  }

  /// Evaluation by variable name; "t" may be given instead of s (principal root).
  Complex eval(const std::map<std::string, Complex>& point) const {
    std::vector<Complex> values(ctx_->arity(), Complex(0.0));
    std::vector<bool> have(ctx_->arity(), false);
    for (const auto& [n, v] : point) {
      if (n == "t") continue;
      if (auto i = ctx_->index_of(n)) {
        values[*i] = v;
        have[*i] = true;
      }
    }
    if (auto s = ctx_->index_of("s"); s && !have[*s]) {
      auto it = point.find("t");
      if (it != point.end()) {
        values[*s] = std::pow(it->second, 1.0 / ctx_->root_degree());
        have[*s] = true;
      }
    }
    for (std::size_t i = 0; i < ctx_->arity(); ++i)
      if (!have[i] && depends_on(i))
        throw ContextError("no value for variable '" + ctx_->names()[i] + "'");
    return eval(values);
  }

  /// Attempt exact cancellation between numerator bases and denominator bases.
  void cancel_cross() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < factors_.size() && !changed; ++i) {
        if (factors_[i].exp <= 0) continue;
        for (std::size_t j = 0; j < factors_.size() && !changed; ++j) {
          if (factors_[j].exp >= 0 || factors_[j].base.size() > factors_[i].base.size()) continue;
          auto q = MPoly::divide_exact(factors_[i].base, factors_[j].base);
          if (!q) continue;
          MPoly num = factors_[i].base;
          MPoly den = factors_[j].base;
          int e = factors_[i].exp;
          insert_factor(factors_, num, -e);
          insert_factor(factors_, den, e);
          RF extra = from_poly(*q).pow(e);
          coef_ *= extra.coef_;
          for (const auto& f : extra.factors_) insert_factor(factors_, f.base, f.exp);
          changed = true;
        }
      }
    }
  }

 private:
  static void insert_factor(std::vector<Factor>& fs, const MPoly& base, int e) {
    if (e == 0) return;
    auto it = std::lower_bound(fs.begin(), fs.end(), base,
                               [](const Factor& f, const MPoly& b) { return MPoly::compare(f.base, b) < 0; });
    if (it != fs.end() && MPoly::compare(it->base, base) == 0) {
      it->exp += e;
      if (it->exp == 0) fs.erase(it);
    } else {
      fs.insert(it, Factor{base, e});
    }
  }

  // Multiply r by the nonzero polynomial p, splitting constant and monomial content
  // and cancelling against denominator bases by exact division.
  static void absorb(RF& r, MPoly p) {
    const Rat lc = p.leading().coef;
    r.coef_ *= lc;
    if (lc != 1) p = p * Rat(1 / lc);
    const Exponents m = p.monomial_content();
    if (total_degree(m) > 0) {
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (m[i] > 0) insert_factor(r.factors_, MPoly::variable(r.ctx_, i), m[i]);
      p = p.divide_monomial(m);
    }
    if (p.is_constant()) return;
    bool reduced = true;
    while (reduced && !p.is_constant()) {
      reduced = false;
      for (std::size_t i = 0; i < r.factors_.size(); ++i) {
        if (r.factors_[i].exp >= 0) continue;
        const MPoly& b = r.factors_[i].base;
        if (b.size() > p.size()) continue;
        if (auto q = MPoly::divide_exact(p, b)) {
          MPoly base = b;
          p = std::move(*q);
          insert_factor(r.factors_, base, 1);
          reduced = true;
          break;
        }
      }
    }
    if (!p.is_constant()) insert_factor(r.factors_, p, 1);
  }

  struct SplitValue {
    MPoly num;
    MPoly den;
    std::vector<Factor> den_factors;
  };

  static RF substitute_poly(const MPoly& p, const std::vector<std::optional<RF>>& vals, const ContextPtr& target) {
    const auto& src = p.context();
    std::vector<SplitValue> split;
    split.reserve(src->arity());
    std::vector<int> maxdeg(src->arity(), 0);
    for (const auto& t : p.terms())
      for (std::size_t i = 0; i < src->arity(); ++i) maxdeg[i] = std::max<int>(maxdeg[i], t.exp[i]);
    for (std::size_t i = 0; i < src->arity(); ++i) {
      if (maxdeg[i] == 0) {
        split.push_back({MPoly(target), MPoly(target), {}});
        continue;
      }
      RF v = vals[i] ? *vals[i] : variable(target, target->require(src->names()[i]));
      SplitValue sv{v.numerator(), MPoly::constant(target, 1), {}};
      for (const auto& f : v.factors_)
        if (f.exp < 0) {
          sv.den_factors.push_back({f.base, -f.exp});
          sv.den = sv.den * f.base.pow(static_cast<unsigned>(-f.exp));
        }
      split.push_back(std::move(sv));
    }
    std::vector<std::vector<MPoly>> npow(src->arity()), dpow(src->arity());
    auto get_pow = [&](std::vector<MPoly>& cache, const MPoly& base, int e) -> const MPoly& {
      if (cache.empty()) cache.push_back(MPoly::constant(target, 1));
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
      return cache[e];
    };
    MPoly bracket(target);
    for (const auto& t : p.terms()) {
      MPoly term = MPoly::constant(target, t.coef);
      for (std::size_t i = 0; i < src->arity(); ++i) {
        if (maxdeg[i] == 0) continue;
        const int e = t.exp[i];
        if (e > 0) term = term * get_pow(npow[i], split[i].num, e);
        if (!split[i].den_factors.empty() && maxdeg[i] - e > 0)
          term = term * get_pow(dpow[i], split[i].den, maxdeg[i] - e);
      }
      bracket = bracket + term;
    }
    RF out(target);
    if (bracket.is_zero()) return out;
    out.coef_ = 1;
    for (std::size_t i = 0; i < src->arity(); ++i)
      for (const auto& f : split[i].den_factors) insert_factor(out.factors_, f.base, -f.exp * maxdeg[i]);
    absorb(out, bracket);
    return out;
  }

  static RF sum(const RF& a, const RF& b, bool subtract) {
    require_same(a.ctx_, b.ctx_);
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    std::vector<Factor> g;
    MPoly pa = MPoly::constant(a.ctx_, a.coef_);
    MPoly pb = MPoly::constant(a.ctx_, subtract ? Rat(-b.coef_) : b.coef_);
    std::size_t i = 0, j = 0;
    auto mult = [](MPoly& acc, const MPoly& base, int e) {
      if (e > 0) acc = acc * base.pow(static_cast<unsigned>(e));
    };
    while (i < a.factors_.size() || j < b.factors_.size()) {
      int c;
      if (i == a.factors_.size()) c = 1;
      else if (j == b.factors_.size()) c = -1;
      else c = MPoly::compare(a.factors_[i].base, b.factors_[j].base);
      if (c == 0) {
        const auto& fa = a.factors_[i++];
        const auto& fb = b.factors_[j++];
        const int m = std::min(fa.exp, fb.exp);
        g.push_back({fa.base, m});
        mult(pa, fa.base, fa.exp - m);
        mult(pb, fb.base, fb.exp - m);
      } else if (c < 0) {
        const auto& fa = a.factors_[i++];
        const int m = std::min(fa.exp, 0);
        if (m != 0) g.push_back({fa.base, m});
        mult(pa, fa.base, fa.exp - m);
        mult(pb, fa.base, -m);
      } else {
        const auto& fb = b.factors_[j++];
        const int m = std::min(fb.exp, 0);
        if (m != 0) g.push_back({fb.base, m});
        mult(pa, fb.base, -m);
        mult(pb, fb.base, fb.exp - m);
      }
    }
    MPoly s = pa + pb;
    RF r(a.ctx_);
    if (s.is_zero()) return r;
    r.coef_ = 1;
    for (auto& f : g)
      if (f.exp != 0) r.factors_.push_back(std::move(f));
    absorb(r, std::move(s));
    return r;
  }

  static void check_degree(const RF& r) {
    int num = 0, den = 0;
    for (const auto& f : r.factors_) {
      const int d = f.base.total_degree() * std::abs(f.exp);
      (f.exp > 0 ? num : den) += d;
    }
    const int bound = r.ctx_->degree_bound();
    if (num > bound || den > bound)
      throw DegreeLimitError("rational function degree exceeds bound " + std::to_string(bound));
  }

  ContextPtr ctx_;
  Rat coef_;
  std::vector<Factor> factors_;
};

inline RF operator+(const RF& a, const Rat& c) { return a + RF::constant(a.context(), c); }
inline RF operator+(const Rat& c, const RF& a) { return RF::constant(a.context(), c) + a; }
inline RF operator-(const RF& a, const Rat& c) { return a - RF::constant(a.context(), c); }
inline RF operator-(const Rat& c, const RF& a) { return RF::constant(a.context(), c) - a; }
inline RF operator/(const Rat& c, const RF& a) { return RF::constant(a.context(), c) / a; }

inline bool rf_is_zero(const RF& a) { return a.is_zero(); }

inline bool rf_equal(const RF& a, const RF& b) { return rf_is_zero(a - b); }

inline RF rf_diff(const RF& a, std::string_view var) { return a.derivative(var); }

/// Derivative with respect to t = s^d.
inline RF rf_diff_t(const RF& a) {
  const auto& ctx = a.context();
  auto s = ctx->index_of("s");
  if (!s) throw ContextError("context has no s variable");
  const int d = ctx->root_degree();
  RF ds = a.derivative(*s);
  if (d == 1) return ds;
  return ds / (RF::variable(ctx, *s).pow(d - 1) * Rat(d));
}

/// Number of monomials of the expanded numerator (0 for the zero function).
inline std::size_t residual_monomials(const RF& a) { return a.is_zero() ? 0 : a.numerator().size(); }

}  // namespace pvc
