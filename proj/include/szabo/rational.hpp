#pragma once

#include <gmpxx.h>

#include <string>

namespace szabo {

// Exact rational scalar for the whole engine.  Arbitrary-precision
// integers via GMP; curvature of degree-2 inputs composed four deep
// overflows 64-bit intermediates.
using Rational = mpq_class;

inline Rational make_rational(long num, unsigned long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) {
  return r.get_str();
}

inline double rational_to_double(const Rational& r) { return r.get_d(); }

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace szabo
