#include "rabi_qes/juddian.hpp"

#include <cmath>

namespace rabi_qes {

std::vector<JuddianRoot> juddian_roots(qes::QesIndex n, const exact::ExactScalar& mu, const SolverConfig& config) {
  if (sgn(mu) < 0) throw DomainError("mu must be non-negative");
  const exact::ExactScalar w = mu * mu;
  const auto p = exact::substitute_w(qes::condition_polynomial(n, config.condition_poly_max_n), w);
  std::vector<JuddianRoot> out;
  if (p.degree() < 1) return out;

  const double mu_d = exact::to_double(mu);
  for (auto& bracket : exact::sturm_isolate(p, exact::ExactScalar(0), exact::cauchy_bound(p))) {
    const double u = exact::refine_root(p, bracket, config.root_tol, config);
    const double kappa = std::sqrt(u);
    out.push_back(JuddianRoot{n.n(), u, kappa, mu_d, n.n() - u, bracket.multiplicity, std::move(bracket)});
  }
  return out;
}

std::vector<JuddianRoot> juddian_roots(qes::QesIndex n, double mu, const SolverConfig& config) {
  return juddian_roots(n, exact::from_double(mu), config);
}

std::vector<fock::JuddianPoint> find_juddian_points(qes::QesIndex n, const exact::ExactScalar& mu, double tol,
                                                    const SolverConfig& config) {
  std::vector<fock::JuddianPoint> out;
  for (const auto& root : juddian_roots(n, mu, config))
    out.push_back(fock::verify_juddian(n, qes::ModelParams(root.kappa, root.mu), tol, config));
  return out;
}

}  // namespace rabi_qes
