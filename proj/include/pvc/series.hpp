#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <utility>

#include "pvc/errors.hpp"
#include "pvc/rf.hpp"

namespace pvc {

/// Truncated Puiseux series sum c_n t^{n/d} + O(t^{prec/d}) with RF coefficients.
class TSeries {
 public:
  static constexpr int kExact = INT_MAX / 4;

  TSeries(ContextPtr ctx, int root_degree = 1, int prec = kExact)
      : ctx_(std::move(ctx)), d_(root_degree), prec_(prec) {
    if (d_ < 1) throw DomainError("series root degree must be positive");
  }

  static TSeries constant(ContextPtr ctx, int d, const RF& c) { return monomial(std::move(ctx), d, c, 0); }

  static TSeries monomial(ContextPtr ctx, int d, const RF& c, int n) {
    TSeries s(std::move(ctx), d);
    s.set(n, c);
    return s;
  }

  /// The series t itself.
  static TSeries t(ContextPtr ctx, int d) {
    RF one = RF::constant(ctx, 1);
    return monomial(std::move(ctx), d, one, d);
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  int root_degree() const noexcept { return d_; }
  int precision() const noexcept { return prec_; }
  bool is_exact() const noexcept { return prec_ >= kExact; }
  const std::map<int, RF>& terms() const noexcept { return terms_; }

  int valuation() const { return terms_.empty() ? prec_ : terms_.begin()->first; }

  RF coeff(int n) const {
    if (n >= prec_) throw DomainError("coefficient beyond series precision");
    auto it = terms_.find(n);
    return it == terms_.end() ? RF(ctx_) : it->second;
  }

  void set(int n, const RF& c) {
    if (n >= prec_) return;
    if (c.is_zero()) terms_.erase(n);
    else terms_.insert_or_assign(n, c);
  }

  TSeries truncated(int prec) const {
    TSeries r(ctx_, d_, std::min(prec, prec_));
    for (const auto& [n, c] : terms_)
      if (n < r.prec_) r.terms_.emplace(n, c);
    return r;
  }

  /// True when every stored coefficient below the precision is zero.
  bool is_zero() const { return terms_.empty(); }

  TSeries operator-() const {
    TSeries r = *this;
    for (auto& [n, c] : r.terms_) c = -c;
    return r;
  }

  friend TSeries operator+(const TSeries& a, const TSeries& b) { return combine(a, b, false); }
  friend TSeries operator-(const TSeries& a, const TSeries& b) { return combine(a, b, true); }

  friend TSeries operator*(const TSeries& a, const TSeries& b) {
    check_compat(a, b);
    const int va = a.valuation(), vb = b.valuation();
    int prec = kExact;
    if (!a.is_exact()) prec = std::min(prec, sat_add(a.prec_, vb));
    if (!b.is_exact()) prec = std::min(prec, sat_add(b.prec_, va));
    TSeries r(a.ctx_, a.d_, prec);
    for (const auto& [n, x] : a.terms_)
      for (const auto& [m, y] : b.terms_) {
        if (n + m >= prec) break;
        RF p = x * y;
        auto it = r.terms_.find(n + m);
        if (it == r.terms_.end()) r.terms_.emplace(n + m, std::move(p));
        else it->second = it->second + p;
      }
    r.drop_zeros();
    return r;
  }

  friend TSeries operator*(const TSeries& a, const RF& c) {
    TSeries r(a.ctx_, a.d_, a.prec_);
    if (c.is_zero()) return r;
    for (const auto& [n, x] : a.terms_) r.terms_.emplace(n, x * c);
    return r;
  }
  friend TSeries operator*(const RF& c, const TSeries& a) { return a * c; }
  friend TSeries operator*(const TSeries& a, const Rat& c) { return a * RF::constant(a.ctx_, c); }
  friend TSeries operator*(const Rat& c, const TSeries& a) { return a * c; }
  friend TSeries operator+(const TSeries& a, const Rat& c) { return a + constant(a.ctx_, a.d_, RF::constant(a.ctx_, c)); }
  friend TSeries operator+(const Rat& c, const TSeries& a) { return a + c; }
  friend TSeries operator-(const TSeries& a, const Rat& c) { return a + Rat(-c); }
  friend TSeries operator-(const Rat& c, const TSeries& a) { return (-a) + c; }

  /// Multiplicative inverse; cap bounds the precision for exact inputs.
  TSeries inverse(int cap = kExact) const {
    const int v = valuation();
    if (terms_.empty()) throw DivisionByZero("series has no invertible leading term");
    int prec = is_exact() ? cap : prec_ - 2 * v;
    prec = std::min(prec, cap);
    if (prec >= kExact) throw DomainError("inverse of an exact series needs a precision cap");
    TSeries r(ctx_, d_, prec);
    const RF inv0 = terms_.begin()->second.inverse();
    std::map<int, RF> w;
    for (int k = 0; -v + k < prec; ++k) {
      RF acc(ctx_);
      if (k == 0) {
        acc = inv0;
      } else {
        for (const auto& [n, c] : terms_) {
          const int j = n - v;
          if (j == 0) continue;
          if (j > k) break;
          auto it = w.find(k - j);
          if (it != w.end()) acc = acc + c * it->second;
        }
        if (!acc.is_zero()) acc = -(acc * inv0);
      }
      if (!acc.is_zero()) w.emplace(k, acc);
    }
    for (auto& [k, c] : w) r.terms_.emplace(k - v, std::move(c));
    return r;
  }

  friend TSeries operator/(const TSeries& a, const TSeries& b) {
    check_compat(a, b);
    const int vb = b.valuation();
    if (b.terms_.empty()) throw DivisionByZero("series division by zero");
    // a*(1/b) has precision min(pa - vb, pb - 2vb + va)
    int cap = a.is_exact() ? kExact : a.prec_ - vb;
    if (a.is_exact() && b.is_exact()) throw DomainError("exact series quotient needs a precision cap");
    if (b.is_exact()) return a * b.inverse(cap);
    return a * b.inverse();
  }

  /// d/dt: t^{n/d} -> (n/d) t^{(n-d)/d}.
  TSeries derivative() const {
    TSeries r(ctx_, d_, is_exact() ? kExact : prec_ - d_);
    for (const auto& [n, c] : terms_)
      if (n != 0) r.terms_.emplace(n - d_, c * rat(n, d_));
    return r;
  }

  TSeries pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    TSeries r = constant(ctx_, d_, RF::constant(ctx_, 1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

 private:
  static int sat_add(int a, int b) {
    long long s = static_cast<long long>(a) + b;
    return s >= kExact ? kExact : static_cast<int>(s);
  }

  static void check_compat(const TSeries& a, const TSeries& b) {
    require_same(a.ctx_, b.ctx_);
    if (a.d_ != b.d_) throw DomainError("series root degree mismatch");
  }

  static TSeries combine(const TSeries& a, const TSeries& b, bool sub) {
    check_compat(a, b);
    TSeries r(a.ctx_, a.d_, std::min(a.prec_, b.prec_));
    for (const auto& [n, c] : a.terms_)
      if (n < r.prec_) r.terms_.emplace(n, c);
    for (const auto& [n, c] : b.terms_) {
      if (n >= r.prec_) continue;
      auto it = r.terms_.find(n);
      if (it == r.terms_.end()) r.terms_.emplace(n, sub ? -c : c);
      else it->second = sub ? it->second - c : it->second + c;
    }
    r.drop_zeros();
    return r;
  }

  void drop_zeros() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero()) it = terms_.erase(it);
      else ++it;
    }
  }

  ContextPtr ctx_;
  int d_;
  int prec_;
  std::map<int, RF> terms_;
};

}  // namespace pvc
