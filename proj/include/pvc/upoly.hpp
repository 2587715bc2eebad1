#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "pvc/errors.hpp"
#include "pvc/mpoly.hpp"
#include "pvc/rat.hpp"

namespace pvc {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

  /// View of p as a polynomial in variable var; all other variables must be absent.
  static UPoly from_mpoly(const MPoly& p, std::size_t var) {
    std::vector<Rat> c;
    for (const auto& t : p.terms()) {
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (i != var && t.exp[i] != 0) throw DomainError("polynomial is not univariate");
      const std::size_t k = t.exp[var];
      if (c.size() <= k) c.resize(k + 1);
      c[k] += t.coef;
    }
    return UPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rat(0); }
  const Rat& lead() const { return c_.back(); }

  Rat eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  template <class T>
  T eval_num(T x) const {
    T acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(static_cast<long double>(it->get_d()));
    return acc;
  }

  UPoly derivative() const {
    std::vector<Rat> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    const Rat l = lead();
    for (auto& x : r.c_) x /= l;
    return r;
  }

  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return UPoly(std::move(c));
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DivisionByZero("univariate division by zero");
    std::vector<Rat> r = a.c_;
    const int db = b.degree();
    std::vector<Rat> q(std::max(0, a.degree() - db + 1));
    for (int k = a.degree() - db; k >= 0; --k) {
      const Rat f = r[k + db] / b.lead();
      q[k] = f;
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= db; ++j) r[k + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Yun square-free decomposition: result[i] has multiplicity i+1.
  std::vector<UPoly> squarefree() const {
    std::vector<UPoly> out;
    if (degree() < 1) return out;
    UPoly f = monic();
    UPoly fp = f.derivative();
    UPoly a = gcd(f, fp);
    UPoly b = divmod(f, a).first;
    UPoly c = divmod(fp, a).first;
    UPoly d = c - b.derivative();
    while (b.degree() >= 1) {
      UPoly g = gcd(b, d);
      out.push_back(g);
      b = divmod(b, g).first;
      c = divmod(d, g).first;
      d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() < 1) out.pop_back();
    return out;
  }

  /// All rational roots (each once); numeric isolation then exact confirmation.
  std::vector<Rat> rational_roots() const {
    std::vector<Rat> roots;
    if (degree() < 1) return roots;
    UPoly f = primitive_integer();
    // strip zero roots
    std::size_t z = 0;
    while (z < f.c_.size() && sgn(f.c_[z]) == 0) ++z;
    if (z > 0) {
      roots.push_back(0);
      f = UPoly(std::vector<Rat>(f.c_.begin() + static_cast<long>(z), f.c_.end()));
    }
    while (f.degree() >= 1) {
      const mpz_class lc = abs(f.primitive_integer().lead().get_num());
      bool found = false;
      for (const auto& r : f.numeric_roots()) {
        if (std::abs(r.imag()) > 1e-6 * (1 + std::abs(r))) continue;
        long double scaled = r.real() * static_cast<long double>(lc.get_d());
        if (std::abs(scaled) > 1e15L) continue;
        Rat cand(mpz_class(static_cast<long>(std::llround(static_cast<double>(scaled)))), lc);
        cand.canonicalize();
        if (sgn(f.eval(cand)) == 0) {
          roots.push_back(cand);
          f = divmod(f, UPoly({-cand, Rat(1)})).first;
          found = true;
          break;
        }
      }
      if (!found) break;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }

  std::vector<std::complex<long double>> numeric_roots() const {
    using C = std::complex<long double>;
    const int n = degree();
    std::vector<C> z(n);
    if (n < 1) return z;
    UPoly m = monic();
    long double bound = 0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::pow(std::abs(static_cast<long double>(m.c_[k].get_d())), 1.0L / (n - k)));
    bound = 2 * bound + 1;
    const C seed(0.4L, 0.9L);
    for (int k = 0; k < n; ++k) z[k] = bound * std::pow(seed, k + 1) / std::abs(std::pow(seed, k + 1)) * 0.5L;
    for (int iter = 0; iter < 2000; ++iter) {
      long double change = 0;
      for (int i = 0; i < n; ++i) {
        C num = m.eval_num<C>(z[i]);
        C den = 1;
        for (int j = 0; j < n; ++j)
          if (j != i) den *= (z[i] - z[j]);
        if (std::abs(den) == 0) den = 1e-30L;
        C delta = num / den;
        z[i] -= delta;
        change = std::max(change, std::abs(delta) / (1 + std::abs(z[i])));
      }
      if (change < 1e-17L) break;
    }
    return z;
  }

  UPoly primitive_integer() const {
    if (is_zero()) return *this;
    mpz_class l = 1;
    for (const auto& x : c_) l = lcm(l, x.get_den());
    std::vector<Rat> c;
    for (const auto& x : c_) c.push_back(x * l);
    mpz_class g = 0;
    for (const auto& x : c) g = ::gcd(g, x.get_num());
    for (auto& x : c) x /= g;
    return UPoly(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
};

}  // namespace pvc
