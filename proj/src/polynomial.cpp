#include "rabi_qes/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "rabi_qes/errors.hpp"

namespace rabi_qes::exact {

// ---------------------------------------------------------------------------
// UnivariatePolynomial

UnivariatePolynomial::UnivariatePolynomial(std::vector<ExactScalar> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

UnivariatePolynomial UnivariatePolynomial::from_roots(std::span<const ExactScalar> roots) {
  UnivariatePolynomial p(std::vector<ExactScalar>{1});
  for (const auto& r : roots) p = p * UnivariatePolynomial(std::vector<ExactScalar>{-r, 1});
  return p;
}

void UnivariatePolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

ExactScalar UnivariatePolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

ExactScalar UnivariatePolynomial::evaluate(const ExactScalar& x) const {
  ExactScalar acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

long double UnivariatePolynomial::evaluate(long double x) const {
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<ExactScalar> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return UnivariatePolynomial(std::move(d));
}

UnivariatePolynomial UnivariatePolynomial::monic() const {
  if (is_zero()) return {};
  const ExactScalar lead = leading();
  return *this * ExactScalar(1 / lead);
}

std::vector<double> UnivariatePolynomial::to_double_coeffs() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(to_double(c));
  return out;
}

UnivariatePolynomial operator+(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  std::vector<ExactScalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial operator-(const UnivariatePolynomial& a) {
  std::vector<ExactScalar> c(a.coeffs_);
  for (auto& x : c) x = -x;
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b) { return a + (-b); }

UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<ExactScalar> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial operator*(const UnivariatePolynomial& a, const ExactScalar& s) {
  std::vector<ExactScalar> c(a.coeffs_);
  for (auto& x : c) x *= s;
  return UnivariatePolynomial(std::move(c));
}

DivisionResult divide(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  if (a.degree() < b.degree()) return {{}, a};

  std::vector<ExactScalar> rem(a.coeffs());
  std::vector<ExactScalar> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coeffs();
  const ExactScalar inv_lead = 1 / b.leading();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const ExactScalar q = rem[static_cast<std::size_t>(k + b.degree())] * inv_lead;
    quot[static_cast<std::size_t>(k)] = q;
    if (sgn(q) == 0) continue;
    for (int i = 0; i <= b.degree(); ++i) rem[static_cast<std::size_t>(k + i)] -= q * bc[static_cast<std::size_t>(i)];
  }
  rem.resize(static_cast<std::size_t>(b.degree()));
  return {UnivariatePolynomial(std::move(quot)), UnivariatePolynomial(std::move(rem))};
}

UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b) {
  while (!b.is_zero()) {
    auto r = divide(a, b).remainder;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

UnivariatePolynomial square_free_part(const UnivariatePolynomial& p) {
  if (p.degree() <= 0) return p;
  const auto g = gcd(p, p.derivative());
  return divide(p, g).quotient;
}

// ---------------------------------------------------------------------------
// BivariatePolynomial

BivariatePolynomial::BivariatePolynomial(const ExactScalar& constant) { add_term({0, 0}, constant); }

BivariatePolynomial BivariatePolynomial::monomial(int deg_u, int deg_w, const ExactScalar& coeff) {
  if (deg_u < 0 || deg_w < 0) throw DomainError("negative exponent");
  BivariatePolynomial p;
  p.add_term({deg_u, deg_w}, coeff);
  return p;
}

void BivariatePolynomial::add_term(const Exponents& e, const ExactScalar& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

ExactScalar BivariatePolynomial::coeff(int deg_u, int deg_w) const {
  const auto it = terms_.find({deg_u, deg_w});
  return it == terms_.end() ? ExactScalar(0) : it->second;
}

int BivariatePolynomial::degree_u() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int BivariatePolynomial::degree_w() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

ExactScalar BivariatePolynomial::evaluate(const ExactScalar& u, const ExactScalar& w) const {
  return substitute_w(*this, w).evaluate(u);
}

double BivariatePolynomial::evaluate(double u, double w) const {
  double acc = 0;
  for (const auto& [e, c] : terms_) acc += to_double(c) * std::pow(u, e.first) * std::pow(w, e.second);
  return acc;
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator-=(const BivariatePolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(const ExactScalar& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

BivariatePolynomial operator-(const BivariatePolynomial& a) { return a * ExactScalar(-1); }

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  BivariatePolynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return out;
}

UnivariatePolynomial substitute_w(const BivariatePolynomial& p, const ExactScalar& w0) {
  if (p.is_zero()) return {};
  std::vector<ExactScalar> c(static_cast<std::size_t>(p.degree_u() + 1));
  for (const auto& [e, coeff] : p.terms()) {
    ExactScalar wp = 1;
    for (int k = 0; k < e.second; ++k) wp *= w0;
    c[static_cast<std::size_t>(e.first)] += coeff * wp;
  }
  return UnivariatePolynomial(std::move(c));
}

}  // namespace rabi_qes::exact
