#include "rabi_qes/qes.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace rabi_qes::qes {

ModelParams::ModelParams(double kappa, double mu) : kappa_(kappa), mu_(mu) {
  if (!std::isfinite(kappa) || !std::isfinite(mu)) throw DomainError("couplings must be finite");
  if (mu < 0) throw DomainError("mu must be non-negative");
}

QesIndex::QesIndex(int n) : n_(n) {
  if (n < 0) throw DomainError("QES index must be non-negative");
}

namespace {

void require_series_index(QesIndex n) {
  if (n.n() < 1) throw DomainError("series operations require n >= 1");
}

}  // namespace

double qes_energy(QesIndex n, const ModelParams& params) { return n.n() - params.u(); }

double series_recurrence_step(QesIndex n, const ModelParams& params, int m, double c_m, double c_prev) {
  return recurrence_step(n.n(), params.u(), params.w(), m, c_m, c_prev);
}

double juddian_constraint(QesIndex n, const ModelParams& params) {
  return constraint_value(n.n(), params.u(), params.w());
}

ExactScalar juddian_constraint(QesIndex n, const ExactScalar& u, const ExactScalar& w) {
  return constraint_value(n.n(), u, w);
}

double constraint_scale(QesIndex n, const ModelParams& params) {
  require_series_index(n);
  const double u = params.u();
  const double w = params.w();
  const auto c = leading_coefficients(n.n(), u, w);
  const double last = c[n.n() - 1];
  const double prev = n.n() >= 2 ? c[n.n() - 2] : 0.0;
  return std::max({1.0, std::abs((1 - 4 * u - w) * last), std::abs(8 * u * prev)});
}

namespace {

struct ConditionCache {
  std::shared_mutex mutex;
  std::map<int, BivariatePolynomial> polys;
};

ConditionCache& condition_cache() {
  static ConditionCache cache;
  return cache;
}

BivariatePolynomial symbolic_constraint(int n) {
  return constraint_value(n, BivariatePolynomial::u(), BivariatePolynomial::w());
}

ExactScalar target_leading(int n) {
  mpz_class f = 1;
  for (int k = 1; k <= n; ++k) f *= 4 * k;
  return ExactScalar(f);
}

}  // namespace

ExactScalar constraint_normalization(QesIndex n) {
  if (n.n() < 1) throw DomainError("condition polynomial requires n >= 1");
  const auto r = symbolic_constraint(n.n());
  const ExactScalar lead = r.coeff(n.n(), 0);
  if (sgn(lead) == 0) throw Error("constraint polynomial lost its u^n term");
  return target_leading(n.n()) / lead;
}

const BivariatePolynomial& condition_polynomial(QesIndex n, int n_max) {
  if (n.n() < 1 || n.n() > n_max)
    throw DomainError("condition polynomial index " + std::to_string(n.n()) + " outside [1, " +
                      std::to_string(n_max) + "]");
  auto& cache = condition_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.polys.find(n.n()); it != cache.polys.end()) return it->second;
  }
  auto p = symbolic_constraint(n.n()) * constraint_normalization(n);
  std::unique_lock lock(cache.mutex);
  return cache.polys.try_emplace(n.n(), std::move(p)).first->second;
}

// ---------------------------------------------------------------------------

namespace {

double horner(std::span<const double> c, double x) {
  double acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

std::vector<double> differentiate(std::span<const double> c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

}  // namespace

double SeriesSolution::value(double x) const { return horner(coeffs, x); }

double SeriesSolution::derivative(double x) const { return horner(differentiate(coeffs), x); }

double SeriesSolution::second_derivative(double x) const {
  return horner(differentiate(differentiate(coeffs)), x);
}

SeriesSolution terminating_series(QesIndex n, const ModelParams& params, double tol) {
  require_series_index(n);
  if (params.mu() == 0) throw DomainError("decoupled case, series closure undefined");
  const double residual = std::abs(juddian_constraint(n, params)) / constraint_scale(n, params);
  if (!(residual <= tol))
    throw ConstraintError("Juddian constraint not satisfied (relative residual " + std::to_string(residual) + ")",
                          residual);
  auto c = closed_series(n.n(), params.u(), params.w());
  return SeriesSolution{n, params, std::move(c), qes_energy(n, params), residual};
}

double bargmann_z(const ModelParams& params, double x) { return params.kappa() * (2 * x - 1); }

double bargmann_x(const ModelParams& params, double z) {
  if (params.kappa() == 0) throw DomainError("Bargmann substitution singular");
  return 0.5 * (z / params.kappa() + 1);
}

// ---------------------------------------------------------------------------

WavefunctionPair::WavefunctionPair(SeriesSolution series) : series_(std::move(series)) {
  if (series_.params.mu() == 0) throw DomainError("wavefunctions undefined for mu = 0");
  if (series_.params.kappa() == 0) throw DomainError("Bargmann substitution singular");
}

double WavefunctionPair::psi1(double z) const {
  const double x = bargmann_x(series_.params, z);
  return std::exp(-2 * series_.params.u() * x) * series_.value(x);
}

double WavefunctionPair::psi1_prime(double z) const {
  const double x = bargmann_x(series_.params, z);
  const double u = series_.params.u();
  const double s = 0.5 / series_.params.kappa();
  return s * std::exp(-2 * u * x) * (series_.derivative(x) - 2 * u * series_.value(x));
}

double WavefunctionPair::psi1_second(double z) const {
  const double x = bargmann_x(series_.params, z);
  const double u = series_.params.u();
  const double s = 0.5 / series_.params.kappa();
  return s * s * std::exp(-2 * u * x) *
         (series_.second_derivative(x) - 4 * u * series_.derivative(x) + 4 * u * u * series_.value(x));
}

double WavefunctionPair::psi2(double z) const {
  const double k = series_.params.kappa();
  const double e = series_.energy;
  return -((z + k) * psi1_prime(z) + (k * z - e) * psi1(z)) / series_.params.mu();
}

double WavefunctionPair::psi2_prime(double z) const {
  const double k = series_.params.kappa();
  const double e = series_.energy;
  const double d1 = psi1_prime(z);
  return -(d1 + (z + k) * psi1_second(z) + k * psi1(z) + (k * z - e) * d1) / series_.params.mu();
}

double WavefunctionPair::residual_first(double z) const {
  const double k = series_.params.kappa();
  return (z + k) * psi1_prime(z) + (k * z - series_.energy) * psi1(z) + series_.params.mu() * psi2(z);
}

double WavefunctionPair::residual_second(double z) const {
  const double k = series_.params.kappa();
  return (z - k) * psi2_prime(z) - (k * z + series_.energy) * psi2(z) + series_.params.mu() * psi1(z);
}

WavefunctionPair wavefunctions(const SeriesSolution& series) { return WavefunctionPair(series); }

// ---------------------------------------------------------------------------

ParameterMap parameter_map(QesIndex n, const ModelParams& params) {
  const double j = n.j();
  const double u = params.u();
  const double S = std::sqrt(4 * j * (j + 1) + (4 * u + 1) * (4 * u + 1));
  return ParameterMap{
      .alpha = 0.5,
      .lambda = -4 * j * (2 * u - j) - params.w(),
      .L = -2 * j - 0.5,
      .A = -S - 0.5,
      .q = 16 * u / ((2 * S + 1) * (2 * S + 1)),
      .S = S,
  };
}

double ode_residual(const SeriesSolution& series, std::span<const double> sample_xs) {
  const double u = series.params.u();
  const double w = series.params.w();
  double worst = 0;
  for (const double x : sample_xs)
    worst = std::max(worst, std::abs(ode_value<double>(series.n.n(), u, w, series.coeffs, x)));
  return worst;
}

double energy_form_residual(const SeriesSolution& series, std::span<const double> sample_xs) {
  const double u = series.params.u();
  const double w = series.params.w();
  const double e = series.energy;
  double worst = 0;
  for (const double x : sample_xs) {
    const double r = series.value(x);
    const double dr = series.derivative(x);
    const double d2r = series.second_derivative(x);
    const double p1 = u * (4 * x * x - 2 * x - 1) + e * (2 * x - 1) - x + 1;
    const double p0 = u * u * (3 - 4 * x) - e * e + 2 * e * u * (1 - 2 * x) + w;
    worst = std::max(worst, std::abs(x * (1 - x) * d2r + p1 * dr + p0 * r));
  }
  return worst;
}

}  // namespace rabi_qes::qes
