#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hypersparse {

/// Arbitrary-precision exact rational, always kept in canonical form.
using Rational = mpq_class;

/// Parses "12", "-3.25", "1e-3", "2.5E+4" or "7/9" into an exact rational.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Integers print as "7", terminating fractions as a decimal ("2.5"),
/// everything else as "p/q". parse_rational(format_rational(x)) == x.
std::string format_rational(const Rational& value);

/// Exact rational of the shortest decimal that round-trips `value`
/// (so 0.1 becomes 1/10 rather than the binary expansion).
Rational rational_from_decimal(double value);

/// Rounds `value` to the nearest multiple of 10^-digits.
Rational rational_rounded(double value, int digits);

Rational floor_rational(const Rational& value);

inline Rational to_rational(const Rational& value) { return value; }
inline Rational to_rational(std::int64_t value) {
  return Rational(mpz_class(static_cast<long>(value)));
}

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace hypersparse
