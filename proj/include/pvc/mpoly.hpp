#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pvc/context.hpp"
#include "pvc/errors.hpp"
#include "pvc/rat.hpp"

namespace pvc {

using Exponents = std::array<std::uint16_t, kMaxVars>;

struct Term {
  Exponents exp{};
  Rat coef;
};

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Sparse polynomial; terms kept strictly descending in lex order (variable 0 most significant).
class MPoly {
 public:
  explicit MPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static MPoly constant(ContextPtr ctx, const Rat& c) {
    MPoly p(std::move(ctx));
    if (sgn(c) != 0) p.terms_.push_back({Exponents{}, c});
    return p;
  }

  static MPoly variable(ContextPtr ctx, std::size_t index, unsigned power = 1) {
    if (index >= ctx->arity()) throw ContextError("variable index out of range");
    MPoly p(std::move(ctx));
    Term t;
    t.exp[index] = static_cast<std::uint16_t>(power);
    t.coef = 1;
    p.terms_.push_back(std::move(t));
    p.check_degree();
    return p;
  }

  static MPoly from_terms(ContextPtr ctx, std::vector<Term> terms) {
    MPoly p(std::move(ctx));
    p.terms_ = std::move(terms);
    p.normalize();
    p.check_degree();
    return p;
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && pvc::total_degree(terms_[0].exp) == 0);
  }
  Rat constant_value() const {
    if (terms_.empty()) return 0;
    const auto& last = terms_.back();
    return pvc::total_degree(last.exp) == 0 ? last.coef : Rat(0);
  }
  const Term& leading() const { return terms_.front(); }

  int degree(std::size_t var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, t.exp[var]);
    return d;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, pvc::total_degree(t.exp));
    return d;
  }

  bool depends_on(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.exp[var] != 0) return true;
    return false;
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return combine(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return combine(a, b, true); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    require_same(a.ctx_, b.ctx_);
    MPoly r(a.ctx_);
    if (a.is_zero() || b.is_zero()) return r;
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0]);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0]);
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) r.terms_.push_back({add_exp(x.exp, y.exp), x.coef * y.coef});
    r.normalize();
    r.check_degree();
    return r;
  }

  friend MPoly operator*(const MPoly& a, const Rat& c) {
    MPoly r(a.ctx_);
    if (sgn(c) == 0) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly pow(unsigned e) const {
    MPoly result = constant(ctx_, 1);
    MPoly base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  MPoly derivative(std::size_t var) const {
    MPoly r(ctx_);
    for (const auto& t : terms_) {
      if (t.exp[var] == 0) continue;
      Term n = t;
      n.coef *= t.exp[var];
      --n.exp[var];
      r.terms_.push_back(std::move(n));
    }
    r.normalize();
    return r;
  }

  /// Coefficient of var^k, as a polynomial in the remaining variables.
  MPoly coefficient(std::size_t var, int k) const {
    MPoly r(ctx_);
    for (const auto& t : terms_)
      if (t.exp[var] == k) {
        Term n = t;
        n.exp[var] = 0;
        r.terms_.push_back(std::move(n));
      }
    r.normalize();
    return r;
  }

  Exponents monomial_content() const {
    Exponents m{};
    if (terms_.empty()) return m;
    m = terms_[0].exp;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], t.exp[i]);
    return m;
  }

  MPoly divide_monomial(const Exponents& m) const {
    MPoly r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!divides(m, t.exp)) throw DomainError("monomial does not divide polynomial");
      Term n = t;
      for (std::size_t i = 0; i < kMaxVars; ++i) n.exp[i] = static_cast<std::uint16_t>(n.exp[i] - m[i]);
      r.terms_.push_back(std::move(n));
    }
    return r;
  }

  /// Quotient a/b when b divides a exactly, otherwise nullopt.
  static std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
    require_same(a.ctx_, b.ctx_);
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    MPoly q(a.ctx_);
    if (a.is_zero()) return q;
    const Term& lb = b.leading();
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      // degree pre-check per variable
      int da = a.degree(i), db = b.degree(i);
      if (db > da) return std::nullopt;
    }
    MPoly r = a;
    std::vector<Term> quot;
    while (!r.is_zero()) {
      const Term& lr = r.leading();
      if (!divides(lb.exp, lr.exp)) return std::nullopt;
      Term t;
      for (std::size_t i = 0; i < kMaxVars; ++i) t.exp[i] = static_cast<std::uint16_t>(lr.exp[i] - lb.exp[i]);
      t.coef = lr.coef / lb.coef;
      r = r - b.mul_term(t);
      quot.push_back(std::move(t));
    }
    q.terms_ = std::move(quot);
    q.normalize();
    return q;
  }

  template <class T>
  T evaluate(std::span<const T> values) const {
    T acc{};
    for (const auto& t : terms_) {
      T m = T(to_double(t.coef));
      for (std::size_t i = 0; i < ctx_->arity(); ++i)
        for (int k = 0; k < t.exp[i]; ++k) m *= values[i];
      acc += m;
    }
    return acc;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (!same_context(a.ctx_, b.ctx_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }

  /// Total order used for keying factor lists.
  static int compare(const MPoly& a, const MPoly& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = a.terms_[i];
      const auto& y = b.terms_[i];
      if (x.exp != y.exp) return x.exp > y.exp ? -1 : 1;
      int c = cmp(x.coef, y.coef);
      if (c != 0) return c < 0 ? -1 : 1;
    }
    if (a.terms_.size() == b.terms_.size()) return 0;
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
  }

 private:
  static Exponents add_exp(const Exponents& a, const Exponents& b) {
    Exponents r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    return r;
  }

  MPoly mul_term(const Term& t) const {
    MPoly r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& x : terms_) r.terms_.push_back({add_exp(x.exp, t.exp), x.coef * t.coef});
    r.check_degree();
    return r;
  }

  static MPoly combine(const MPoly& a, const MPoly& b, bool subtract) {
    require_same(a.ctx_, b.ctx_);
    MPoly r(a.ctx_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exp > b.terms_[j].exp)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exp > a.terms_[i].exp) {
        Term t = b.terms_[j++];
        if (subtract) t.coef = -t.coef;
        r.terms_.push_back(std::move(t));
      } else {
        Rat c = subtract ? Rat(a.terms_[i].coef - b.terms_[j].coef) : Rat(a.terms_[i].coef + b.terms_[j].coef);
        if (sgn(c) != 0) r.terms_.push_back({a.terms_[i].exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.exp > y.exp; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().coef += t.coef;
      } else {
        if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
    terms_ = std::move(out);
  }

  void check_degree() const {
    const int bound = ctx_->degree_bound();
    for (const auto& t : terms_)
      if (pvc::total_degree(t.exp) > bound)
        throw DegreeLimitError("polynomial total degree exceeds bound " + std::to_string(bound));
  }

  ContextPtr ctx_;
  std::vector<Term> terms_;
};

}  // namespace pvc
