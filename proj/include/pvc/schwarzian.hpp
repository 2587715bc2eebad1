#pragma once

#include <map>
#include <string>

#include "pvc/errors.hpp"
#include "pvc/rf.hpp"

namespace pvc {

/// Schwarzian derivative x'''/x' - (3/2)(x''/x')^2 with respect to z.
inline RF schwarzian(const RF& x) {
  const RF x1 = x.derivative("z");
  if (x1.is_zero()) throw DomainError("constant map has no Schwarzian");
  const RF x2 = x1.derivative("z");
  const RF x3 = x2.derivative("z");
  const RF r = x2 / x1;
  return x3 / x1 - r * r * Rat(3, 2);
}

/// SL potential after the change of variable x = x(z): Q(x) x'^2 - S/2.
inline RF pullback(const RF& q, const RF& x) {
  require_same(q.context(), x.context());
  const RF x1 = x.derivative("z");
  if (x1.is_zero()) throw DomainError("constant map");
  const RF qx = q.substitute(std::map<std::string, RF>{{"z", x}});
  return qx * x1 * x1 - schwarzian(x) * Rat(1, 2);
}

/// Composition f(g(z)).
inline RF compose(const RF& f, const RF& g) {
  return f.substitute(std::map<std::string, RF>{{"z", g}});
}

}  // namespace pvc
