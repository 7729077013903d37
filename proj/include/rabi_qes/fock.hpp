#pragma once

#include <span>
#include <vector>

#include "rabi_qes/config.hpp"
#include "rabi_qes/errors.hpp"
#include "rabi_qes/qes.hpp"

namespace rabi_qes::fock {

using qes::ModelParams;
using qes::QesIndex;

/// Rabi Hamiltonian in the boson-number basis cut at occupation N.
/// Basis index i = 2 * n_boson + s, with sigma_3 |s> = (-1)^s |s>.
class TruncatedHamiltonian {
 public:
  TruncatedHamiltonian(const ModelParams& params, int N);

  static int index(int n_boson, int spin) { return 2 * n_boson + spin; }

  int N() const { return N_; }
  int dim() const { return dim_; }
  const ModelParams& params() const { return params_; }
  double operator()(int row, int col) const { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
  std::span<const double> entries() const { return entries_; }
  double trace() const;

 private:
  void set_symmetric(int row, int col, double value);

  ModelParams params_;
  int N_;
  int dim_;
  std::vector<double> entries_;  // row-major
};

TruncatedHamiltonian build_hamiltonian(const ModelParams& params, int N);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  int N_used = 0;
  int converged_count = 0;
  double tol = 0;
  int sweeps = 0;
  /// Column-major dim x dim, column k pairs with eigenvalues[k]; empty
  /// unless requested.
  std::vector<double> eigenvectors;
};

/// Thrown when a solver runs out of sweeps or truncation headroom; carries
/// the last result computed.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, SpectrumResult best) : Error(what), best_(std::move(best)) {}
  const SpectrumResult& best() const noexcept { return best_; }

 private:
  SpectrumResult best_;
};

/// Cyclic Jacobi diagonalization of a dense symmetric matrix (row-major).
SpectrumResult jacobi_eigen(std::vector<double> matrix, int dim, bool want_vectors = false,
                            const SolverConfig& config = kDefaultConfig);

SpectrumResult eig_symmetric(const TruncatedHamiltonian& h, bool want_vectors = false,
                             const SolverConfig& config = kDefaultConfig);

/// Doubles N from config.oracle_start_N until the k lowest eigenvalues move
/// by less than tol; gives up past config.oracle_max_N.
SpectrumResult converged_spectrum(const ModelParams& params, int k, double tol = kDefaultConfig.spectrum_tol,
                                  const SolverConfig& config = kDefaultConfig);

struct JuddianPoint {
  int n = 0;
  double kappa = 0;
  double mu = 0;
  double energy = 0;      // n - kappa^2
  double oracle_gap = 0;  // distance to the nearest oracle eigenvalue
  int multiplicity = 0;   // oracle eigenvalues inside the cluster window
  int N_used = 0;
};

/// Compares the QES energy at a Juddian point with the converged Fock
/// spectrum. Throws DomainError when the constraint is not satisfied.
JuddianPoint verify_juddian(QesIndex n, const ModelParams& params, double tol = kDefaultConfig.spectrum_tol,
                            const SolverConfig& config = kDefaultConfig);

}  // namespace rabi_qes::fock
