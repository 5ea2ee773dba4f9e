#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pforest {

// Exact rational scalar. All geometry below is tolerance-free: every
// predicate reduces to sign computations on these. GMP keeps values in
// canonical reduced form (positive denominator, gcd 1) as long as values
// are built through the helpers here.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

inline Rat rat_abs(const Rat& q) { return sign(q) < 0 ? Rat(-q) : q; }

// floor(q) as a plain long; used only for spatial bucketing of desk-scale
// coordinates, so a range check is enough.
inline long rat_floor_long(const Rat& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!z.fits_slong_p()) throw std::overflow_error("rat_floor_long: out of range");
  return z.get_si();
}

inline double rat_double(const Rat& q) { return q.get_d(); }

// Canonical text form: "n" or "n/d" with d > 0.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat rat_parse(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
  if (mpz_sgn(q.get_den_mpz_t()) == 0) throw std::invalid_argument("rat_parse: zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace pforest
