#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace pvc {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

// Exact square root when both numerator and denominator are perfect squares.
inline std::optional<Rat> exact_sqrt(const Rat& r) {
  if (sgn(r) < 0) return std::nullopt;
  mpz_class n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rat out{rn, rd};
  out.canonicalize();
  return out;
}

inline Rat rat_pow(const Rat& base, int e) {
  Rat out = 1;
  Rat b = e < 0 ? Rat(1 / base) : base;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) out *= b;
  return out;
}

}  // namespace pvc
