#pragma once

#include <vector>

#include "rabi_qes/config.hpp"
#include "rabi_qes/polynomial.hpp"

namespace rabi_qes::exact {

/// Interval isolating exactly one distinct real root. Either the end values
/// have opposite signs or one end is the root itself.
struct RootBracket {
  ExactScalar lo;
  ExactScalar hi;
  ExactScalar value_lo;
  ExactScalar value_hi;
  int multiplicity = 1;

  double lo_approx() const { return to_double(lo); }
  double hi_approx() const { return to_double(hi); }
};

/// 1 + max |c_i / c_lead|; every real root lies strictly inside (-B, B).
ExactScalar cauchy_bound(const UnivariatePolynomial& p);

/// Sturm chain of a polynomial (p, p', -rem, ...), each member rescaled by a
/// positive constant.
class SturmSequence {
 public:
  explicit SturmSequence(const UnivariatePolynomial& p);

  int sign_variations(const ExactScalar& x) const;
  /// Number of distinct real roots in (a, b].
  int count(const ExactScalar& a, const ExactScalar& b) const;
  const std::vector<UnivariatePolynomial>& chain() const { return chain_; }

 private:
  std::vector<UnivariatePolynomial> chain_;
};

/// Isolates every distinct real root in (lo, hi]. Brackets are disjoint,
/// ascending, and carry the root multiplicity in p.
std::vector<RootBracket> sturm_isolate(const UnivariatePolynomial& p, const ExactScalar& lo, const ExactScalar& hi);
std::vector<RootBracket> sturm_isolate(const UnivariatePolynomial& p, double lo, double hi);

/// Shrinks an isolating bracket (exact bisection, then safeguarded Newton)
/// until the root is pinned to within tol * max(1, |root|).
double refine_root(const UnivariatePolynomial& p, const RootBracket& bracket,
                   double tol = kDefaultConfig.root_tol, const SolverConfig& config = kDefaultConfig);

}  // namespace rabi_qes::exact
