#include "rabi_qes/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rabi_qes::fock {

TruncatedHamiltonian::TruncatedHamiltonian(const ModelParams& params, int N)
    : params_(params), N_(N), dim_(2 * (N + 1)) {
  if (N < 1) throw DomainError("boson truncation N must be >= 1");
  entries_.assign(static_cast<std::size_t>(dim_) * dim_, 0.0);
  const double kappa = params.kappa();
  const double mu = params.mu();
  for (int n = 0; n <= N; ++n) {
    for (int s = 0; s < 2; ++s) {
      const int i = index(n, s);
      set_symmetric(i, i, n);
      if (s == 0) set_symmetric(i, index(n, 1), mu);
      if (n < N) set_symmetric(index(n + 1, s), i, (s == 0 ? 1.0 : -1.0) * kappa * std::sqrt(n + 1.0));
    }
  }
}

void TruncatedHamiltonian::set_symmetric(int row, int col, double value) {
  entries_[static_cast<std::size_t>(row) * dim_ + col] = value;
  entries_[static_cast<std::size_t>(col) * dim_ + row] = value;
}

double TruncatedHamiltonian::trace() const {
  double t = 0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

TruncatedHamiltonian build_hamiltonian(const ModelParams& params, int N) { return TruncatedHamiltonian(params, N); }

SpectrumResult jacobi_eigen(std::vector<double> a, int dim, bool want_vectors, const SolverConfig& config) {
  if (dim < 1 || a.size() != static_cast<std::size_t>(dim) * dim) throw DomainError("matrix shape mismatch");
  const auto n = static_cast<std::size_t>(dim);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };

  std::vector<double> v;
  if (want_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  const double frob = std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
  auto off_norm = [&] {
    double s = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2 * at(p, q) * at(p, q);
    return std::sqrt(s);
  };
  const double target = config.jacobi_offdiag_rel * frob;

  SpectrumResult result;
  int sweep = 0;
  for (; off_norm() > target; ++sweep) {
    if (sweep >= config.jacobi_max_sweeps) {
      for (std::size_t i = 0; i < n; ++i) result.eigenvalues.push_back(at(i, i));
      std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
      result.sweeps = sweep;
      throw ConvergenceError("eigensolver did not converge", std::move(result));
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        const double theta = (aqq - app) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0;
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[p * n + k];
            const double vkq = v[q * n + k];
            v[p * n + k] = c * vkp - s * vkq;
            v[q * n + k] = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return at(x, x) < at(y, y); });
  for (const auto i : order) result.eigenvalues.push_back(at(i, i));
  if (want_vectors) {
    result.eigenvectors.reserve(n * n);
    for (const auto i : order) result.eigenvectors.insert(result.eigenvectors.end(), v.begin() + i * n, v.begin() + (i + 1) * n);
  }
  result.sweeps = sweep;
  return result;
}

SpectrumResult eig_symmetric(const TruncatedHamiltonian& h, bool want_vectors, const SolverConfig& config) {
  if (h.dim() < 2) throw DomainError("eig_symmetric requires dim >= 2");
  auto r = jacobi_eigen({h.entries().begin(), h.entries().end()}, h.dim(), want_vectors, config);
  r.N_used = h.N();
  r.converged_count = static_cast<int>(r.eigenvalues.size());
  return r;
}

SpectrumResult converged_spectrum(const ModelParams& params, int k, double tol, const SolverConfig& config) {
  if (k < 1) throw DomainError("converged_spectrum requires k >= 1");
  int N = std::max(config.oracle_start_N, k);
  SpectrumResult previous = eig_symmetric(build_hamiltonian(params, N), false, config);
  while (true) {
    const int next_N = 2 * N;
    if (next_N > config.oracle_max_N) {
      previous.converged_count = 0;
      previous.tol = tol;
      throw ConvergenceError("truncation cap " + std::to_string(config.oracle_max_N) + " reached before convergence",
                             std::move(previous));
    }
    SpectrumResult current = eig_symmetric(build_hamiltonian(params, next_N), false, config);
    double worst = 0;
    for (int i = 0; i < k; ++i) worst = std::max(worst, std::abs(current.eigenvalues[i] - previous.eigenvalues[i]));
    N = next_N;
    if (worst < tol) {
      current.eigenvalues.resize(static_cast<std::size_t>(k));
      current.converged_count = k;
      current.tol = tol;
      return current;
    }
    previous = std::move(current);
  }
}

JuddianPoint verify_juddian(QesIndex n, const ModelParams& params, double tol, const SolverConfig& config) {
  if (n.n() < 1) throw DomainError("not a Juddian point: n must be >= 1");
  const double residual = std::abs(qes::juddian_constraint(n, params)) / qes::constraint_scale(n, params);
  if (!(residual <= config.verify_constraint_tol))
    throw DomainError("not a Juddian point (relative constraint residual " + std::to_string(residual) + ")");

  const double energy = qes::qes_energy(n, params);
  const double window = config.cluster_window * std::max(1.0, std::abs(energy));

  // Enough levels that the requested energy sits well inside the converged
  // part of the spectrum.
  int k = 2 * (n.n() + static_cast<int>(std::ceil(params.mu())) + 2);
  SpectrumResult spec;
  while (true) {
    spec = converged_spectrum(params, k, tol, config);
    if (spec.eigenvalues.back() > energy + 1.0) break;
    k *= 2;
  }

  JuddianPoint point{n.n(), params.kappa(), params.mu(), energy, HUGE_VAL, 0, spec.N_used};
  for (const double e : spec.eigenvalues) {
    point.oracle_gap = std::min(point.oracle_gap, std::abs(e - energy));
    if (std::abs(e - energy) <= window) ++point.multiplicity;
  }
  return point;
}

}  // namespace rabi_qes::fock
