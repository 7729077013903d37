#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rabi_qes::exact {

/// Arbitrary-precision rational, always kept in canonical form
/// (positive denominator, coprime parts).
using ExactScalar = mpq_class;

/// Parses "3/5", "-12", "0.6", "1.25e-3" into an exact rational. Decimal
/// literals are read exactly, so "0.6" is 3/5 rather than the nearest double.
ExactScalar parse_exact(std::string_view text);

/// Exact binary value of a finite double.
ExactScalar from_double(double value);

double to_double(const ExactScalar& value);

/// "p/q", or just "p" for integers.
std::string to_string(const ExactScalar& value);

inline ExactScalar make_ratio(long num, long den) {
  ExactScalar r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const ExactScalar& value) { return value.get_den() == 1; }

}  // namespace rabi_qes::exact
