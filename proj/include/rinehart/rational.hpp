#pragma once

#include <gmpxx.h>

#include <string>

namespace rinehart {

/// Exact rational number. GMP keeps numerator/denominator canonical
/// (coprime, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Builds a canonical rational from numerator and (nonzero) denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace rinehart
