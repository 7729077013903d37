#pragma once

#include <vector>

#include "rabi_qes/config.hpp"
#include "rabi_qes/fock.hpp"
#include "rabi_qes/qes.hpp"
#include "rabi_qes/roots.hpp"

namespace rabi_qes {

/// A positive root u = kappa^2 of P_n(u, mu^2).
struct JuddianRoot {
  int n = 0;
  double u = 0;
  double kappa = 0;
  double mu = 0;
  double energy = 0;
  int multiplicity = 1;
  exact::RootBracket bracket;
};

/// All roots of the condition polynomial of level n in u in (0, B], B the
/// Cauchy bound, ascending in kappa. mu is taken exactly, so decimal input
/// such as 3/5 yields rational roots exactly when they exist.
std::vector<JuddianRoot> juddian_roots(qes::QesIndex n, const exact::ExactScalar& mu,
                                       const SolverConfig& config = kDefaultConfig);
std::vector<JuddianRoot> juddian_roots(qes::QesIndex n, double mu, const SolverConfig& config = kDefaultConfig);

/// juddian_roots followed by the Fock-space cross-check of each root.
std::vector<fock::JuddianPoint> find_juddian_points(qes::QesIndex n, const exact::ExactScalar& mu,
                                                    double tol = kDefaultConfig.spectrum_tol,
                                                    const SolverConfig& config = kDefaultConfig);

}  // namespace rabi_qes
