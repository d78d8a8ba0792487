#pragma once

// Exact rational scalars. Every coordinate and every predicate in the library
// is evaluated over Q; there is no floating point mode.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace shatter {

using Rational = mpq_class;

/// Parses "num/den" or "num" (decimal integers, optional sign). The result is
/// canonicalized. Throws std::invalid_argument on malformed input or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Always "num/den" with den > 0, reduced.
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

/// num/den in canonical form. mpq_class(num, den) alone does not reduce, and
/// GMP arithmetic assumes reduced operands.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace shatter
