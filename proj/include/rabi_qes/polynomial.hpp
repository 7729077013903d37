#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rabi_qes/rational.hpp"

namespace rabi_qes::exact {

/// Dense univariate polynomial with exact rational coefficients, index =
/// degree. Always trimmed: the zero polynomial has no coefficients.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<ExactScalar> coeffs);

  /// Polynomial with the given roots and leading coefficient 1.
  static UnivariatePolynomial from_roots(std::span<const ExactScalar> roots);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<ExactScalar>& coeffs() const { return coeffs_; }
  ExactScalar coeff(int k) const;
  const ExactScalar& leading() const { return coeffs_.back(); }

  ExactScalar evaluate(const ExactScalar& x) const;
  long double evaluate(long double x) const;
  int sign_at(const ExactScalar& x) const { return sgn(evaluate(x)); }

  UnivariatePolynomial derivative() const;
  UnivariatePolynomial monic() const;
  std::vector<double> to_double_coeffs() const;

  friend UnivariatePolynomial operator+(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  friend UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const ExactScalar& s);
  friend UnivariatePolynomial operator-(const UnivariatePolynomial& a);
  friend bool operator==(const UnivariatePolynomial& a, const UnivariatePolynomial& b) = default;

 private:
  void trim();
  std::vector<ExactScalar> coeffs_;
};

struct DivisionResult {
  UnivariatePolynomial quotient;
  UnivariatePolynomial remainder;
};

/// Euclidean division; throws DomainError when the divisor is zero.
DivisionResult divide(const UnivariatePolynomial& a, const UnivariatePolynomial& b);

/// Monic greatest common divisor (zero only when both inputs are zero).
UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b);

/// p / gcd(p, p'): same distinct roots as p, all simple.
UnivariatePolynomial square_free_part(const UnivariatePolynomial& p);

/// Sparse polynomial in u and w with exact coefficients. In this library u
/// stands for kappa^2 and w for mu^2. Zero coefficients are never stored.
class BivariatePolynomial {
 public:
  using Exponents = std::pair<int, int>;  // (deg_u, deg_w)
  using TermMap = std::map<Exponents, ExactScalar>;

  BivariatePolynomial() = default;
  BivariatePolynomial(const ExactScalar& constant);  // NOLINT: implicit constant
  BivariatePolynomial(long constant) : BivariatePolynomial(ExactScalar(constant)) {}  // NOLINT

  static BivariatePolynomial monomial(int deg_u, int deg_w, const ExactScalar& coeff);
  static BivariatePolynomial u() { return monomial(1, 0, 1); }
  static BivariatePolynomial w() { return monomial(0, 1, 1); }

  const TermMap& terms() const { return terms_; }
  ExactScalar coeff(int deg_u, int deg_w) const;
  bool is_zero() const { return terms_.empty(); }
  int degree_u() const;
  int degree_w() const;

  ExactScalar evaluate(const ExactScalar& u, const ExactScalar& w) const;
  double evaluate(double u, double w) const;

  BivariatePolynomial& operator+=(const BivariatePolynomial& other);
  BivariatePolynomial& operator-=(const BivariatePolynomial& other);
  BivariatePolynomial& operator*=(const ExactScalar& s);

  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) { return a -= b; }
  friend BivariatePolynomial operator-(const BivariatePolynomial& a);
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator*(BivariatePolynomial a, const ExactScalar& s) { return a *= s; }
  friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) = default;

 private:
  void add_term(const Exponents& e, const ExactScalar& c);
  TermMap terms_;
};

/// Specializes p(u, w) at w = w0.
UnivariatePolynomial substitute_w(const BivariatePolynomial& p, const ExactScalar& w0);

}  // namespace rabi_qes::exact
