#pragma once

namespace rabi_qes {

// Every fixed numerical constant of the solver lives here.
struct SolverConfig {
  int condition_poly_max_n = 12;

  // root refinement
  double bisection_width = 1e-8;
  double root_tol = 1e-14;
  int refine_max_iterations = 400;

  // series / ODE checks
  double constraint_tol = 1e-10;  // relative, see qes::constraint_scale
  double verify_constraint_tol = 1e-8;
  double ode_residual_tol = 1e-10;

  // Fock-space oracle
  int oracle_start_N = 16;
  int oracle_max_N = 4096;
  int jacobi_max_sweeps = 50;
  double jacobi_offdiag_rel = 1e-12;
  double spectrum_tol = 1e-10;
  double cluster_window = 1e-6;  // times max(1, |E|)
};

inline constexpr SolverConfig kDefaultConfig{};

}  // namespace rabi_qes
