#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "rabi_qes/config.hpp"
#include "rabi_qes/errors.hpp"
#include "rabi_qes/polynomial.hpp"
#include "rabi_qes/rational.hpp"

namespace rabi_qes::qes {

using exact::BivariatePolynomial;
using exact::ExactScalar;

/// Couplings of H = a^+a + kappa sigma_3 (a^+ + a) + mu (sigma^+ + sigma^-).
/// mu is the half level splitting and must be non-negative.
class ModelParams {
 public:
  ModelParams(double kappa, double mu);

  double kappa() const { return kappa_; }
  double mu() const { return mu_; }
  double u() const { return kappa_ * kappa_; }
  double w() const { return mu_ * mu_; }

 private:
  double kappa_;
  double mu_;
};

/// n = 2j, the degree of the terminating polynomial.
class QesIndex {
 public:
  explicit QesIndex(int n);
  int n() const { return n_; }
  double j() const { return 0.5 * n_; }

 private:
  int n_;
};

// ---------------------------------------------------------------------------
// Three-term recurrence for R(x) = sum c_m x^m solving
//   x(1-x)R'' + [2j(2x-1) + (x-1)(4u x-1)]R' + [8j u(1-x) + w - 4j^2]R = 0,
// which reads, row by row (coefficient of x^m),
//   (m+1)(m+1-n) c_{m+1} = [(m-n)(m-n+4u) - w] c_m - 4u(m-1-n) c_{m-1}.
// The templates run over double, ExactScalar and BivariatePolynomial.

inline double divide_by(double x, long d) { return x / static_cast<double>(d); }
inline ExactScalar divide_by(const ExactScalar& x, long d) { return x / ExactScalar(d); }
inline BivariatePolynomial divide_by(const BivariatePolynomial& x, long d) { return x * exact::make_ratio(1, d); }

/// Right-hand side of row m.
template <class T>
T recurrence_row_rhs(int n, const T& u, const T& w, int m, const T& c_m, const T& c_prev) {
  const T shift(static_cast<long>(m - n));
  const T a = shift * (shift + T(4L) * u) - w;
  const T b = T(4L) * u * T(static_cast<long>(m - 1 - n));
  return T(a * c_m) - T(b * c_prev);
}

/// c_{m+1} from c_m and c_{m-1}. Row m = n-1 is the constraint row and has
/// no c_{m+1}; asking for it throws.
template <class T>
T recurrence_step(int n, const T& u, const T& w, int m, const T& c_m, const T& c_prev) {
  const long lead = static_cast<long>(m + 1) * (m + 1 - n);
  if (lead == 0) throw DomainError("constraint row, not a recurrence step");
  return divide_by(recurrence_row_rhs(n, u, w, m, c_m, c_prev), lead);
}

/// c_0 = 1, ..., c_{n-1} from the recurrence.
template <class T>
std::vector<T> leading_coefficients(int n, const T& u, const T& w) {
  std::vector<T> c{T(1L)};
  for (int m = 0; m + 1 < n; ++m) {
    const T prev = m == 0 ? T(0L) : c[m - 1];
    c.push_back(recurrence_step(n, u, w, m, c[m], prev));
  }
  return c;
}

/// Left-over of row n-1: [(1-4u) - w] c_{n-1} + 8u c_{n-2}. Zero exactly at
/// the Juddian points of level n.
template <class T>
T constraint_value(int n, const T& u, const T& w) {
  if (n < 1) throw DomainError("constraint requires n >= 1");
  const auto c = leading_coefficients(n, u, w);
  const T prev = n >= 2 ? c[n - 2] : T(0L);
  return recurrence_row_rhs(n, u, w, n - 1, c[n - 1], prev);
}

/// c_0..c_n with the closure c_n = 4u c_{n-1} / w, followed by `extra`
/// continuation terms c_{n+1}, ... from the recurrence (all zero when the
/// constraint holds).
template <class T>
std::vector<T> closed_series(int n, const T& u, const T& w, int extra = 0) {
  auto c = leading_coefficients(n, u, w);
  c.push_back(T(T(4L) * u * c[n - 1]) / w);
  for (int m = n; m < n + extra; ++m) c.push_back(recurrence_step(n, u, w, m, c[m], c[m - 1]));
  return c;
}

/// Residual of the polynomial ODE above at x for coefficients c.
template <class T>
T ode_value(int n, const T& u, const T& w, std::span<const T> c, const T& x) {
  T r(0L), dr(0L), d2r(0L);
  for (std::size_t k = c.size(); k-- > 0;) {
    d2r = T(d2r * x) + T(2L) * dr;
    dr = T(dr * x) + r;
    r = T(r * x) + c[k];
  }
  const T nn(static_cast<long>(n));
  const T one(1L);
  const T p2 = x * (one - x);
  const T p1 = T(nn * (T(2L) * x - one)) + T((x - one) * T(T(4L) * u * x - one));
  const T p0 = T(T(4L) * nn * u * (one - x)) + w - T(nn * nn);
  return T(p2 * d2r) + T(p1 * dr) + T(p0 * r);
}

// ---------------------------------------------------------------------------
// Numerical front end.

/// E = n - kappa^2.
double qes_energy(QesIndex n, const ModelParams& params);

double series_recurrence_step(QesIndex n, const ModelParams& params, int m, double c_m, double c_prev);

/// Constraint row value at the given couplings (zero at a Juddian point).
double juddian_constraint(QesIndex n, const ModelParams& params);
ExactScalar juddian_constraint(QesIndex n, const ExactScalar& u, const ExactScalar& w);

/// Magnitude used to make the constraint residual relative:
/// max(1, |(1-4u-w) c_{n-1}|, |8u c_{n-2}|).
double constraint_scale(QesIndex n, const ModelParams& params);

/// Condition polynomial P_n(u = kappa^2, w = mu^2), normalized so that the
/// u^n coefficient is 4^n n!. Results are memoized per n.
const BivariatePolynomial& condition_polynomial(QesIndex n, int n_max = kDefaultConfig.condition_poly_max_n);

/// Factor f with condition_polynomial(n) == f * constraint_value(n, u, w).
ExactScalar constraint_normalization(QesIndex n);

struct SeriesSolution {
  QesIndex n;
  ModelParams params;
  std::vector<double> coeffs;  // c_0 .. c_n, c_0 = 1
  double energy;
  double constraint_residual;  // relative, see constraint_scale

  /// R(x), R'(x), R''(x).
  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
};

/// Terminating series at a Juddian point. Throws DomainError for mu = 0 and
/// ConstraintError when the constraint residual exceeds tol.
SeriesSolution terminating_series(QesIndex n, const ModelParams& params, double tol = kDefaultConfig.constraint_tol);

/// z = kappa (2x - 1) and its inverse.
double bargmann_z(const ModelParams& params, double x);
double bargmann_x(const ModelParams& params, double z);

/// psi_1(z) = exp(-2 kappa^2 x) R(x) and psi_2 recovered from the first of
///   (z+kappa) psi_1' + (kappa z - E) psi_1 + mu psi_2 = 0,
///   (z-kappa) psi_2' - (kappa z + E) psi_2 + mu psi_1 = 0.
/// All derivatives are analytic.
class WavefunctionPair {
 public:
  explicit WavefunctionPair(SeriesSolution series);

  double psi1(double z) const;
  double psi1_prime(double z) const;
  double psi1_second(double z) const;
  double psi2(double z) const;
  double psi2_prime(double z) const;

  double residual_first(double z) const;
  double residual_second(double z) const;

  const ModelParams& params() const { return series_.params; }
  double energy() const { return series_.energy; }
  const SeriesSolution& series() const { return series_; }

 private:
  SeriesSolution series_;
};

WavefunctionPair wavefunctions(const SeriesSolution& series);

struct ParameterMap {
  double alpha;
  double lambda;
  double L;
  double A;
  double q;
  double S;
};

ParameterMap parameter_map(QesIndex n, const ModelParams& params);

/// max |ODE residual| of the terminating polynomial over the samples.
double ode_residual(const SeriesSolution& series, std::span<const double> sample_xs);

/// Same check through the energy-dependent form of the equation obtained by
/// eliminating psi_2 directly:
///   x(1-x)R'' + [u(4x^2-2x-1) + E(2x-1) - x + 1]R'
///     + [u^2(3-4x) - E^2 + 2Eu(1-2x) + w]R = 0.
double energy_form_residual(const SeriesSolution& series, std::span<const double> sample_xs);

}  // namespace rabi_qes::qes
