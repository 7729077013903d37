#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "rabi_qes/cli.hpp"
#include "rabi_qes/fock.hpp"
#include "rabi_qes/juddian.hpp"
#include "rabi_qes/qes.hpp"

namespace rabi_qes::cli {

namespace {

using nlohmann::json;
using qes::ModelParams;
using qes::QesIndex;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.path, "Write to PATH instead of standard output");
}

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open output file '" + o.path + "'");
  f << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

SolverConfig config_from_env() {
  SolverConfig cfg;
  if (const char* cap = std::getenv("RABI_QES_NMAX"); cap && *cap) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (*end != '\0' || v < 1) throw UsageError("RABI_QES_NMAX must be a positive integer");
    cfg.oracle_max_N = static_cast<int>(v);
  }
  return cfg;
}

exact::ExactScalar parse_mu(const std::string& text) {
  try {
    return exact::parse_exact(text);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--mu: ") + e.what());
  }
}

void require_index(int n, const SolverConfig& cfg) {
  if (n < 1 || n > cfg.condition_poly_max_n)
    throw UsageError("--n must be in [1, " + std::to_string(cfg.condition_poly_max_n) + "]");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--baselines expects non-negative integers, got '" + item + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_condition_poly(int n, const Output& o, std::ostream& out) {
  const SolverConfig cfg;
  require_index(n, cfg);
  const auto& p = qes::condition_polynomial(QesIndex(n), cfg.condition_poly_max_n);
  std::ostringstream text;
  if (o.format == "json") {
    json terms = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
      terms.push_back({{"du", it->first.first}, {"dw", it->first.second}, {"coeff", exact::to_string(it->second)}});
    text << dump({{"n", n}, {"terms", terms}});
  } else {
    write_csv_row(text, {"du", "dw", "coeff"});
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
      write_csv_row(text, {std::to_string(it->first.first), std::to_string(it->first.second),
                           exact::to_string(it->second)});
  }
  emit(o, text.str(), out);
  return kSuccess;
}

int cmd_juddian(int n, const std::string& mu_text, double tol, const Output& o, std::ostream& out,
                std::ostream& err) {
  const auto cfg = config_from_env();
  require_index(n, cfg);
  const auto mu = parse_mu(mu_text);
  if (sgn(mu) <= 0) throw UsageError("--mu must be > 0");

  const auto points = find_juddian_points(QesIndex(n), mu, tol, cfg);
  std::ostringstream text;
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& p : points)
      rows.push_back({{"n", p.n},
                      {"kappa", p.kappa},
                      {"mu", p.mu},
                      {"energy", p.energy},
                      {"oracle_gap", p.oracle_gap},
                      {"multiplicity", p.multiplicity},
                      {"N_used", p.N_used}});
    text << dump({{"n", n}, {"mu", exact::to_double(mu)}, {"points", rows}});
  } else {
    write_csv_row(text, {"n", "kappa", "mu", "energy", "oracle_gap", "multiplicity", "N_used"});
    for (const auto& p : points)
      write_csv_row(text, {std::to_string(p.n), format_real(p.kappa), format_real(p.mu), format_real(p.energy),
                           format_real(p.oracle_gap), std::to_string(p.multiplicity), std::to_string(p.N_used)});
  }
  if (points.empty()) err << "note: no positive Juddian roots for n=" << n << " at mu=" << mu_text << "\n";
  emit(o, text.str(), out);
  return kSuccess;
}

int cmd_spectrum(double kappa, double mu, int levels, double tol, const Output& o, std::ostream& out) {
  const auto cfg = config_from_env();
  if (levels < 1) throw UsageError("--levels must be >= 1");
  if (mu < 0) throw UsageError("--mu must be >= 0");
  const auto s = fock::converged_spectrum(ModelParams(kappa, mu), levels, tol, cfg);
  std::ostringstream text;
  if (o.format == "json") {
    text << dump({{"kappa", kappa},
                  {"mu", mu},
                  {"eigenvalues", s.eigenvalues},
                  {"N_used", s.N_used},
                  {"converged_count", s.converged_count},
                  {"tol", s.tol}});
  } else {
    write_csv_row(text, {"level", "energy"});
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
      write_csv_row(text, {std::to_string(i), format_real(s.eigenvalues[i])});
  }
  emit(o, text.str(), out);
  return kSuccess;
}

struct ScanPoint {
  double kappa = 0;
  std::vector<double> eigenvalues;
  bool converged = false;
  std::string failure;
};

int cmd_scan(double mu, double kmin, double kmax, int steps, int levels, const std::string& baselines_text, double tol,
             int threads, const Output& o, std::ostream& out, std::ostream& err) {
  const auto cfg = config_from_env();
  if (steps < 2) throw UsageError("--steps must be >= 2");
  if (kmin < 0) throw UsageError("--kappa-min must be >= 0");
  if (kmax < kmin) throw UsageError("--kappa-max must be >= --kappa-min");
  if (levels < 1) throw UsageError("--levels must be >= 1");
  if (mu < 0) throw UsageError("--mu must be >= 0");
  const auto baselines = parse_int_list(baselines_text);

  std::vector<ScanPoint> points(static_cast<std::size_t>(steps));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < steps; i = next++) {
      auto& pt = points[static_cast<std::size_t>(i)];
      pt.kappa = kmin + (kmax - kmin) * i / (steps - 1);
      try {
        pt.eigenvalues = fock::converged_spectrum(ModelParams(pt.kappa, mu), levels, tol, cfg).eigenvalues;
        pt.converged = true;
      } catch (const fock::ConvergenceError& e) {
        pt.failure = e.what();
        pt.eigenvalues = e.best().eigenvalues;
        pt.eigenvalues.resize(static_cast<std::size_t>(levels), std::nan(""));
      }
    }
  };
  const int pool = std::clamp(threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency()), 1, steps);
  {
    std::vector<std::jthread> workers;
    for (int t = 0; t < pool; ++t) workers.emplace_back(worker);
  }

  int warnings = 0;
  std::ostringstream text;
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& p : points) {
      json base = json::array();
      for (int n : baselines) base.push_back(n - p.kappa * p.kappa);
      rows.push_back({{"kappa", p.kappa}, {"eigenvalues", p.eigenvalues}, {"qes_baselines", base},
                      {"converged", p.converged}});
    }
    text << dump({{"mu", mu}, {"baselines", baselines}, {"rows", rows}});
  } else {
    std::vector<std::string> header{"kappa"};
    for (int i = 0; i < levels; ++i) header.push_back("E" + std::to_string(i));
    for (int n : baselines) header.push_back("qes_n" + std::to_string(n));
    header.push_back("converged");
    write_csv_row(text, header);
    for (const auto& p : points) {
      std::vector<std::string> row{format_real(p.kappa)};
      for (double e : p.eigenvalues) row.push_back(format_real(e));
      for (int n : baselines) row.push_back(format_real(n - p.kappa * p.kappa));
      row.push_back(p.converged ? "1" : "0");
      write_csv_row(text, row);
    }
  }
  for (const auto& p : points) {
    if (p.converged) continue;
    ++warnings;
    err << "warning: kappa=" << format_real(p.kappa) << ": " << p.failure << "\n";
  }
  if (warnings) err << "warning: " << warnings << " grid point(s) did not converge\n";
  emit(o, text.str(), out);
  return kSuccess;
}

int cmd_wavefunction(int n, const std::string& mu_text, int root, int samples, const Output& o, std::ostream& out) {
  const auto cfg = config_from_env();
  require_index(n, cfg);
  const auto mu = parse_mu(mu_text);
  if (sgn(mu) <= 0) throw UsageError("--mu must be > 0");
  if (samples < 1) throw UsageError("--samples must be >= 1");
  const auto roots = juddian_roots(QesIndex(n), mu, cfg);
  if (root < 0 || root >= static_cast<int>(roots.size()))
    throw UsageError("--root " + std::to_string(root) + " out of range (" + std::to_string(roots.size()) +
                     " root(s) available)");

  const auto& r = roots[static_cast<std::size_t>(root)];
  const auto psi = qes::wavefunctions(qes::terminating_series(QesIndex(n), ModelParams(r.kappa, r.mu)));
  std::vector<double> zs;
  for (int i = 0; i < samples; ++i)
    zs.push_back(samples == 1 ? 0.0 : 2 * r.kappa * (2.0 * i / (samples - 1) - 1));

  std::ostringstream text;
  if (o.format == "json") {
    json rows = json::array();
    for (double z : zs)
      rows.push_back({{"z", z},
                      {"psi1", psi.psi1(z)},
                      {"psi2", psi.psi2(z)},
                      {"residual3a", psi.residual_first(z)},
                      {"residual3b", psi.residual_second(z)}});
    text << dump({{"n", n}, {"mu", r.mu}, {"kappa", r.kappa}, {"energy", psi.energy()}, {"samples", rows}});
  } else {
    write_csv_row(text, {"z", "psi1", "psi2", "residual3a", "residual3b"});
    for (double z : zs)
      write_csv_row(text, {format_real(z), format_real(psi.psi1(z)), format_real(psi.psi2(z)),
                           format_real(psi.residual_first(z)), format_real(psi.residual_second(z))});
  }
  emit(o, text.str(), out);
  return kSuccess;
}

int cmd_verify(const std::string& suite_name, bool timestamp, const Output& o, std::ostream& out) {
  const Suite suite = suite_name == "golden" ? Suite::golden : suite_name == "oracle" ? Suite::oracle : Suite::all;
  const auto checks = run_suite(suite);
  std::optional<std::string> stamp;
  if (timestamp) {
    const std::time_t now = std::time(nullptr);
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    stamp = ts.str();
  }
  const auto doc = report_json(suite, checks, stamp);
  emit(o, dump(doc), out);
  return doc["all_pass"].get<bool>() ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-exact Juddian solutions of the Rabi Hamiltonian", "rabi-qes"};
  app.require_subcommand(1);

  Output o;
  int n = 0;
  std::string mu_text;
  double mu = 0, kappa = 0, tol = kDefaultConfig.spectrum_tol;
  int spectrum_levels = 8, scan_levels = 4, steps = 0, root = 0, samples = 0, threads = 0;
  double kmin = 0, kmax = 0;
  std::string baselines = "0,1,2,3";
  std::string suite;
  bool as_json = false, timestamp = false;

  auto* cp = app.add_subcommand("condition-poly", "Exact condition polynomial P_n(u = kappa^2, w = mu^2)");
  cp->add_option("--n", n, "Level index n = 2j")->required();
  cp->add_flag("--json", as_json, "Same as --format json");
  add_output_options(cp, o);

  auto* jd = app.add_subcommand("juddian", "Juddian points of level n at fixed mu, checked against the oracle");
  jd->add_option("--n", n)->required();
  jd->add_option("--mu", mu_text, "Half level splitting (decimal or p/q, read exactly)")->required();
  jd->add_option("--tol", tol, "Oracle convergence tolerance");
  add_output_options(jd, o);

  auto* sp = app.add_subcommand("spectrum", "Converged low spectrum in the truncated Fock basis");
  sp->add_option("--kappa", kappa)->required();
  sp->add_option("--mu", mu)->required();
  sp->add_option("--levels", spectrum_levels, "Number of lowest levels");
  sp->add_option("--tol", tol);
  add_output_options(sp, o);

  auto* sc = app.add_subcommand("scan", "Spectral flow over a kappa grid with QES baselines");
  sc->add_option("--mu", mu)->required();
  sc->add_option("--kappa-min", kmin)->required();
  sc->add_option("--kappa-max", kmax)->required();
  sc->add_option("--steps", steps)->required();
  sc->add_option("--levels", scan_levels, "Eigenvalue columns per row");
  sc->add_option("--baselines", baselines, "Comma-separated n values for n - kappa^2 columns");
  sc->add_option("--tol", tol);
  sc->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  add_output_options(sc, o);

  auto* wf = app.add_subcommand("wavefunction", "Bargmann-space components at a Juddian point");
  wf->add_option("--n", n)->required();
  wf->add_option("--mu", mu_text)->required();
  wf->add_option("--root", root, "Root index, ascending in kappa")->required();
  wf->add_option("--samples", samples)->required();
  add_output_options(wf, o);

  auto* vf = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
  vf->add_option("--suite", suite)->required()->check(CLI::IsMember({"golden", "oracle", "all"}));
  vf->add_flag("--timestamp", timestamp, "Include generation time in the report metadata");
  vf->add_option("--out", o.path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (as_json) o.format = "json";
    if (*cp) return cmd_condition_poly(n, o, out);
    if (*jd) return cmd_juddian(n, mu_text, tol, o, out, err);
    if (*sp) return cmd_spectrum(kappa, mu, spectrum_levels, tol, o, out);
    if (*sc) return cmd_scan(mu, kmin, kmax, steps, scan_levels, baselines, tol, threads, o, out, err);
    if (*wf) return cmd_wavefunction(n, mu_text, root, samples, o, out);
    if (*vf) return cmd_verify(suite, timestamp, o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kUsageError;
}

}  // namespace rabi_qes::cli
