#pragma once

#include <gmpxx.h>

#include <string>

namespace stringtop {

/// Exact rational scalar. Always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// (-1)^e as a rational.
inline Rational sign_power(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

inline int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace stringtop
