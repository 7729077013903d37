#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "rabi_qes/fock.hpp"
#include "rabi_qes/juddian.hpp"
#include "rabi_qes/qes.hpp"

namespace py = pybind11;
using namespace rabi_qes;
using qes::ModelParams;
using qes::QesIndex;

namespace {

// mu may be given as a float or as an exact decimal/rational string.
exact::ExactScalar exact_mu(const std::variant<std::string, double>& mu) {
  if (const auto* s = std::get_if<std::string>(&mu)) return exact::parse_exact(*s);
  return exact::from_double(std::get<double>(mu));
}

}  // namespace

PYBIND11_MODULE(_rabi_qes, m) {
  m.doc() = "Quasi-exact Juddian solutions of the Rabi Hamiltonian";

  // Translators are tried newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConstraintError>(m, "ConstraintError", PyExc_ArithmeticError);
  py::register_exception<fock::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def(
      "condition_polynomial",
      [](int n) {
        std::vector<std::tuple<int, int, std::string>> terms;
        const auto& p = qes::condition_polynomial(QesIndex(n));
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
          terms.emplace_back(it->first.first, it->first.second, exact::to_string(it->second));
        return terms;
      },
      py::arg("n"), "Terms (deg_u, deg_w, exact integer coefficient as str) of P_n, u = kappa^2, w = mu^2.");

  m.def(
      "qes_energy", [](int n, double kappa) { return qes::qes_energy(QesIndex(n), ModelParams(kappa, 0)); },
      py::arg("n"), py::arg("kappa"));
  m.def(
      "juddian_constraint",
      [](int n, double kappa, double mu) { return qes::juddian_constraint(QesIndex(n), ModelParams(kappa, mu)); },
      py::arg("n"), py::arg("kappa"), py::arg("mu"));

  py::class_<JuddianRoot>(m, "JuddianRoot")
      .def_readonly("n", &JuddianRoot::n)
      .def_readonly("u", &JuddianRoot::u)
      .def_readonly("kappa", &JuddianRoot::kappa)
      .def_readonly("mu", &JuddianRoot::mu)
      .def_readonly("energy", &JuddianRoot::energy)
      .def_readonly("multiplicity", &JuddianRoot::multiplicity)
      .def("__repr__", [](const JuddianRoot& r) {
        return "JuddianRoot(n=" + std::to_string(r.n) + ", kappa=" + std::to_string(r.kappa) +
               ", energy=" + std::to_string(r.energy) + ")";
      });

  m.def(
      "juddian_roots",
      [](int n, const std::variant<std::string, double>& mu) { return juddian_roots(QesIndex(n), exact_mu(mu)); },
      py::arg("n"), py::arg("mu"));

  py::class_<fock::JuddianPoint>(m, "JuddianPoint")
      .def_readonly("n", &fock::JuddianPoint::n)
      .def_readonly("kappa", &fock::JuddianPoint::kappa)
      .def_readonly("mu", &fock::JuddianPoint::mu)
      .def_readonly("energy", &fock::JuddianPoint::energy)
      .def_readonly("oracle_gap", &fock::JuddianPoint::oracle_gap)
      .def_readonly("multiplicity", &fock::JuddianPoint::multiplicity)
      .def_readonly("N_used", &fock::JuddianPoint::N_used);

  m.def(
      "find_juddian_points",
      [](int n, const std::variant<std::string, double>& mu, double tol) {
        return find_juddian_points(QesIndex(n), exact_mu(mu), tol);
      },
      py::arg("n"), py::arg("mu"), py::arg("tol") = kDefaultConfig.spectrum_tol);
  m.def(
      "verify_juddian",
      [](int n, double kappa, double mu, double tol) {
        return fock::verify_juddian(QesIndex(n), ModelParams(kappa, mu), tol);
      },
      py::arg("n"), py::arg("kappa"), py::arg("mu"), py::arg("tol") = kDefaultConfig.spectrum_tol);

  py::class_<qes::SeriesSolution>(m, "SeriesSolution")
      .def_property_readonly("n", [](const qes::SeriesSolution& s) { return s.n.n(); })
      .def_property_readonly("kappa", [](const qes::SeriesSolution& s) { return s.params.kappa(); })
      .def_property_readonly("mu", [](const qes::SeriesSolution& s) { return s.params.mu(); })
      .def_readonly("coeffs", &qes::SeriesSolution::coeffs)
      .def_readonly("energy", &qes::SeriesSolution::energy)
      .def_readonly("constraint_residual", &qes::SeriesSolution::constraint_residual)
      .def("__call__", &qes::SeriesSolution::value, py::arg("x"));

  m.def(
      "terminating_series",
      [](int n, double kappa, double mu, double tol) {
        return qes::terminating_series(QesIndex(n), ModelParams(kappa, mu), tol);
      },
      py::arg("n"), py::arg("kappa"), py::arg("mu"), py::arg("tol") = kDefaultConfig.constraint_tol);
  m.def("ode_residual", [](const qes::SeriesSolution& s, const std::vector<double>& xs) {
    return qes::ode_residual(s, xs);
  });

  py::class_<qes::WavefunctionPair>(m, "WavefunctionPair")
      .def(py::init<qes::SeriesSolution>())
      .def("psi1", &qes::WavefunctionPair::psi1, py::arg("z"))
      .def("psi2", &qes::WavefunctionPair::psi2, py::arg("z"))
      .def("residual_first", &qes::WavefunctionPair::residual_first, py::arg("z"))
      .def("residual_second", &qes::WavefunctionPair::residual_second, py::arg("z"))
      .def_property_readonly("energy", &qes::WavefunctionPair::energy);
  m.def("wavefunctions", &qes::wavefunctions, py::arg("series"));

  py::class_<qes::ParameterMap>(m, "ParameterMap")
      .def_readonly("alpha", &qes::ParameterMap::alpha)
      .def_readonly("lambda_", &qes::ParameterMap::lambda)
      .def_readonly("L", &qes::ParameterMap::L)
      .def_readonly("A", &qes::ParameterMap::A)
      .def_readonly("q", &qes::ParameterMap::q)
      .def_readonly("S", &qes::ParameterMap::S);
  m.def(
      "parameter_map",
      [](int n, double kappa, double mu) { return qes::parameter_map(QesIndex(n), ModelParams(kappa, mu)); },
      py::arg("n"), py::arg("kappa"), py::arg("mu"));

  m.def(
      "build_hamiltonian",
      [](double kappa, double mu, int N) {
        const auto h = fock::build_hamiltonian(ModelParams(kappa, mu), N);
        py::array_t<double> a({h.dim(), h.dim()});
        std::copy(h.entries().begin(), h.entries().end(), a.mutable_data());
        return a;
      },
      py::arg("kappa"), py::arg("mu"), py::arg("N"));

  py::class_<fock::SpectrumResult>(m, "SpectrumResult")
      .def_readonly("eigenvalues", &fock::SpectrumResult::eigenvalues)
      .def_readonly("N_used", &fock::SpectrumResult::N_used)
      .def_readonly("converged_count", &fock::SpectrumResult::converged_count)
      .def_readonly("tol", &fock::SpectrumResult::tol);
  m.def(
      "converged_spectrum",
      [](double kappa, double mu, int k, double tol) {
        return fock::converged_spectrum(ModelParams(kappa, mu), k, tol);
      },
      py::arg("kappa"), py::arg("mu"), py::arg("k"), py::arg("tol") = kDefaultConfig.spectrum_tol);
}
