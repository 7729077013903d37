#include <cmath>
#include <random>

#include "rabi_qes/cli.hpp"
#include "rabi_qes/fock.hpp"
#include "rabi_qes/juddian.hpp"
#include "rabi_qes/qes.hpp"

namespace rabi_qes::cli {

namespace {

using exact::BivariatePolynomial;
using exact::ExactScalar;
using exact::make_ratio;
using qes::ModelParams;
using qes::QesIndex;

nlohmann::json terms_json(const BivariatePolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back({{"du", it->first.first}, {"dw", it->first.second}, {"coeff", exact::to_string(it->second)}});
  return terms;
}

BivariatePolynomial printed_form(int n) {
  const auto u = BivariatePolynomial::u();
  const auto w = BivariatePolynomial::w();
  auto c = [](long v) { return BivariatePolynomial(v); };
  switch (n) {
    case 1: return c(4) * u + w - c(1);
    case 2: return c(32) * u * u + c(4) * (c(3) * w - c(8)) * u + w * (w - c(5)) + c(4);
    default:
      return c(384) * u * u * u + c(16) * (c(11) * w - c(54)) * u * u + c(8) * (c(3) * w * w - c(29) * w + c(54)) * u +
             w * (w - c(7)) * (w - c(7)) - c(36);
  }
}

void golden_checks(std::vector<CheckResult>& out) {
  for (int n = 1; n <= 3; ++n) {
    const auto& p = qes::condition_polynomial(QesIndex(n));
    const bool same = p == printed_form(n);
    out.push_back({"golden.P" + std::to_string(n), same, {{"terms", terms_json(p)}}});
  }
}

void oracle_checks(std::vector<CheckResult>& out) {
  {
    const double mu = 0.6;
    const auto s = fock::converged_spectrum(ModelParams(0, mu), 8, 1e-12);
    std::vector<double> expect;
    for (int n = 0; n < 8; ++n) {
      expect.push_back(n - mu);
      expect.push_back(n + mu);
    }
    std::sort(expect.begin(), expect.end());
    double worst = 0;
    for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(s.eigenvalues[i] - expect[i]));
    out.push_back({"oracle.kappa0_limit", worst < 1e-10, {{"mu", mu}, {"max_error", worst}, {"N_used", s.N_used}}});
  }
  for (const double kappa : {0.3, 0.8}) {
    const auto s = fock::converged_spectrum(ModelParams(kappa, 0), 8, 1e-10);
    double worst = 0;
    for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(s.eigenvalues[i] - (i / 2 - kappa * kappa)));
    out.push_back({"oracle.mu0_limit.kappa=" + format_real(kappa), worst < 1e-8,
                   {{"kappa", kappa}, {"max_error", worst}, {"N_used", s.N_used}}});
  }
}

void juddian_checks(std::vector<CheckResult>& out) {
  const std::vector<std::pair<int, const char*>> cases{{1, "0.6"}, {2, "0.5"}, {3, "0.5"}};
  const auto xs_for = [](double kappa) {
    std::vector<double> z;
    for (int i = 0; i < 21; ++i) z.push_back(-2 * kappa + 4 * kappa * i / 20);
    return z;
  };
  for (const auto& [n, mu_text] : cases) {
    const auto mu = exact::parse_exact(mu_text);
    const auto points = find_juddian_points(QesIndex(n), mu);
    nlohmann::json rows = nlohmann::json::array();
    bool pass = !points.empty();
    double worst_residual = 0;
    for (const auto& p : points) {
      pass = pass && p.oracle_gap < 1e-7 && p.multiplicity == 2;
      const auto psi = qes::wavefunctions(qes::terminating_series(QesIndex(n), ModelParams(p.kappa, p.mu)));
      for (const double z : xs_for(p.kappa))
        worst_residual =
            std::max({worst_residual, std::abs(psi.residual_first(z)), std::abs(psi.residual_second(z))});
      rows.push_back({{"kappa", p.kappa},
                      {"energy", p.energy},
                      {"oracle_gap", p.oracle_gap},
                      {"multiplicity", p.multiplicity},
                      {"N_used", p.N_used}});
    }
    out.push_back({"juddian.n=" + std::to_string(n) + ".mu=" + mu_text, pass, {{"points", rows}}});
    out.push_back({"wavefunction.n=" + std::to_string(n) + ".mu=" + mu_text, !points.empty() && worst_residual < 1e-10,
                   {{"max_residual", worst_residual}, {"samples", 21}}});
  }
}

void algebra_checks(std::vector<CheckResult>& out) {
  std::mt19937 rng(20240601);
  {
    bool pass = true;
    for (int i = 0; i < 50; ++i) {
      const long den = std::uniform_int_distribution<long>(2, 1000)(rng);
      const long num = std::uniform_int_distribution<long>(1, den - 1)(rng);
      const auto u = make_ratio(num, 4 * den);
      const ExactScalar w = 1 - 4 * u;
      const auto c = qes::closed_series(1, u, w, 2);
      pass = pass && sgn(c[2]) == 0 && sgn(c[3]) == 0;
    }
    out.push_back({"series.termination_n1_family", pass, {{"samples", 50}}});
  }
  {
    bool pass = true;
    int evaluated = 0;
    for (int n = 1; n <= 4; ++n) {
      const auto f = qes::constraint_normalization(QesIndex(n));
      const auto& p = qes::condition_polynomial(QesIndex(n));
      for (int i = 0; i < 50; ++i) {
        const long du = std::uniform_int_distribution<long>(1, 60)(rng);
        const long dw = std::uniform_int_distribution<long>(1, 60)(rng);
        const auto u = make_ratio(std::uniform_int_distribution<long>(1, 2 * du)(rng), du);
        const auto w = make_ratio(std::uniform_int_distribution<long>(1, 2 * dw)(rng), dw);
        pass = pass && qes::juddian_constraint(QesIndex(n), u, w) * f == p.evaluate(u, w);
        ++evaluated;
      }
    }
    out.push_back({"constraint.polynomial_equivalence", pass, {{"samples", evaluated}}});
  }
}

}  // namespace

std::vector<CheckResult> run_suite(Suite suite) {
  std::vector<CheckResult> out;
  if (suite == Suite::golden || suite == Suite::all) golden_checks(out);
  if (suite == Suite::oracle || suite == Suite::all) oracle_checks(out);
  if (suite == Suite::all) {
    juddian_checks(out);
    algebra_checks(out);
  }
  return out;
}

nlohmann::json report_json(Suite suite, const std::vector<CheckResult>& checks,
                           const std::optional<std::string>& timestamp) {
  static const char* names[] = {"golden", "oracle", "all"};
  nlohmann::json doc;
  doc["suite"] = names[static_cast<int>(suite)];
  doc["checks"] = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    doc["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}});
    all_pass = all_pass && c.pass;
  }
  doc["all_pass"] = all_pass;
  if (timestamp) doc["metadata"] = {{"generated_at", *timestamp}};
  return doc;
}

}  // namespace rabi_qes::cli
