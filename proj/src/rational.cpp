#include "rabi_qes/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "rabi_qes/errors.hpp"

namespace rabi_qes::exact {

namespace {

ExactScalar pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  ExactScalar r = e < 0 ? ExactScalar(mpz_class(1), p) : ExactScalar(p);
  r.canonicalize();
  return r;
}

}  // namespace

ExactScalar parse_exact(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw DomainError("empty number");

  if (s.find('/') != std::string::npos) {
    ExactScalar r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
      throw DomainError("malformed rational '" + s + "'");
    r.canonicalize();
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';

  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw DomainError("malformed number '" + s + "'");

  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw DomainError("malformed number '" + s + "'");
    ++i;
    std::size_t used = 0;
    long exponent = 0;
    try {
      exponent = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw DomainError("malformed exponent in '" + s + "'");
    }
    if (used != s.size() - i) throw DomainError("malformed exponent in '" + s + "'");
    if (exponent > 4000 || exponent < -4000) throw DomainError("exponent out of range in '" + s + "'");
    scale += exponent;
  }

  ExactScalar r(mpz_class(digits, 10));
  r *= pow10(scale);
  if (negative) r = -r;
  return r;
}

ExactScalar from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no exact rational form");
  ExactScalar r(value);
  r.canonicalize();
  return r;
}

double to_double(const ExactScalar& value) {
  // mpq_get_d truncates; pick the nearest of the truncated value and its
  // neighbour away from zero.
  const double truncated = value.get_d();
  if (!std::isfinite(truncated) || sgn(value) == 0) return truncated;
  const double away = std::nextafter(truncated, sgn(value) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return truncated;
  const ExactScalar d_trunc = abs(value - ExactScalar(truncated));
  const ExactScalar d_away = abs(value - ExactScalar(away));
  return d_away < d_trunc ? away : truncated;
}

std::string to_string(const ExactScalar& value) { return value.get_str(10); }

}  // namespace rabi_qes::exact
