#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "rabi_qes/cli.hpp"

using namespace rabi_qes::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double num(const std::string& s) { return std::stod(s); }

}  // namespace

TEST_CASE("format_real round trips at 17 digits") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double v = d(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(format_real(v)) == v);
  }
  CHECK(format_real(0.84) == "0.83999999999999997");
}

TEST_CASE("condition-poly") {
  const auto r = run_cli({"condition-poly", "--n", "1", "--json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["n"] == 1);
  REQUIRE(doc["terms"].size() == 3);
  CHECK(doc["terms"][0] == nlohmann::json({{"du", 1}, {"dw", 0}, {"coeff", "4"}}));
  CHECK(doc["terms"][1] == nlohmann::json({{"du", 0}, {"dw", 1}, {"coeff", "1"}}));
  CHECK(doc["terms"][2] == nlohmann::json({{"du", 0}, {"dw", 0}, {"coeff", "-1"}}));

  const auto csv = parse_csv(run_cli({"condition-poly", "--n", "2"}).out);
  REQUIRE(csv.size() == 7);
  CHECK(csv[0] == std::vector<std::string>{"du", "dw", "coeff"});
  CHECK(csv[1] == std::vector<std::string>{"2", "0", "32"});

  // coefficients beyond 64 bits stay exact decimal strings
  const auto big = nlohmann::json::parse(run_cli({"condition-poly", "--n", "12", "--format", "json"}).out);
  CHECK(big["terms"][0]["coeff"] == "8036313307545600");  // 4^12 * 12!
  bool wide = false;
  for (const auto& t : big["terms"]) wide = wide || t["coeff"].get<std::string>().size() > 19;
  CHECK(wide);

  const auto bad = run_cli({"condition-poly", "--n", "13"});
  CHECK(bad.code == 2);
  CHECK(!bad.err.empty());
  CHECK(run_cli({"condition-poly", "--n", "0"}).code == 2);
}

TEST_CASE("juddian") {
  const auto one = parse_csv(run_cli({"juddian", "--n", "1", "--mu", "0.6"}).out);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == std::vector<std::string>{"n", "kappa", "mu", "energy", "oracle_gap", "multiplicity", "N_used"});
  CHECK(num(one[1][1]) == 0.4);
  CHECK(num(one[1][3]) == doctest::Approx(0.84).epsilon(1e-15));
  CHECK(num(one[1][4]) < 1e-7);
  CHECK(one[1][5] == "2");

  const auto two = parse_csv(run_cli({"juddian", "--n", "2", "--mu", "0.5"}).out);
  REQUIRE(two.size() == 3);
  CHECK(num(two[1][1]) == doctest::Approx(0.332328).epsilon(1e-6));
  CHECK(num(two[1][3]) == doctest::Approx(1.889558).epsilon(1e-6));
  CHECK(num(two[2][1]) == doctest::Approx(0.892081).epsilon(1e-6));
  CHECK(num(two[2][3]) == doctest::Approx(1.204192).epsilon(1e-6));

  const auto none = run_cli({"juddian", "--n", "1", "--mu", "1.5"});
  CHECK(none.code == 0);
  CHECK(parse_csv(none.out).size() == 1);
  CHECK(none.err.find("note") != std::string::npos);

  CHECK(run_cli({"juddian", "--n", "1", "--mu", "0"}).code == 2);
  CHECK(run_cli({"juddian", "--n", "1", "--mu", "zero"}).code == 2);
}

TEST_CASE("spectrum") {
  const auto r = run_cli({"spectrum", "--kappa", "0", "--mu", "0.6", "--levels", "4"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  const double expect[] = {-0.6, 0.4, 0.6, 1.4};
  for (int i = 0; i < 4; ++i) CHECK(num(rows[i + 1][1]) == doctest::Approx(expect[i]).epsilon(1e-12));

  const auto j = nlohmann::json::parse(run_cli({"spectrum", "--kappa", "0.4", "--mu", "0.6", "--format", "json"}).out);
  CHECK(j["eigenvalues"].size() == 8);
  CHECK(j["converged_count"] == 8);
}

TEST_CASE("RABI_QES_NMAX caps the oracle truncation") {
  ::setenv("RABI_QES_NMAX", "16", 1);
  const auto r = run_cli({"spectrum", "--kappa", "0.4", "--mu", "0.6"});
  CHECK(r.code == 1);
  ::setenv("RABI_QES_NMAX", "abc", 1);
  CHECK(run_cli({"spectrum", "--kappa", "0.4", "--mu", "0.6"}).code == 2);
  ::unsetenv("RABI_QES_NMAX");
}

TEST_CASE("scan") {
  const auto r = run_cli({"scan", "--mu", "0.6", "--kappa-min", "0", "--kappa-max", "1", "--steps", "11"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].front() == "kappa");
  CHECK(rows[0].back() == "converged");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (int c = 1; c < 4; ++c) CHECK(num(rows[i][c]) <= num(rows[i][c + 1]));
    CHECK(rows[i].back() == "1");
  }
  // kappa = 0.4 row: two levels sit on 0.84
  const auto& x = rows[5];
  CHECK(num(x[0]) == 0.4);
  int hits = 0;
  for (int c = 1; c <= 4; ++c) hits += std::abs(num(x[c]) - 0.84) < 1e-8;
  CHECK(hits == 2);

  // determinism across thread counts
  const auto single = run_cli({"scan", "--mu", "0.6", "--kappa-min", "0", "--kappa-max", "1", "--steps", "11",
                               "--threads", "1"});
  CHECK(single.out == r.out);

  // decoupled: eigenvalues are the baselines
  const auto d = parse_csv(run_cli({"scan", "--mu", "0", "--kappa-min", "0.1", "--kappa-max", "0.9", "--steps", "5",
                                    "--levels", "4", "--baselines", "0,1"})
                               .out);
  for (std::size_t i = 1; i < d.size(); ++i) {
    CHECK(num(d[i][1]) == doctest::Approx(num(d[i][5])).epsilon(1e-9));
    CHECK(num(d[i][2]) == doctest::Approx(num(d[i][5])).epsilon(1e-9));
    CHECK(num(d[i][3]) == doctest::Approx(num(d[i][6])).epsilon(1e-9));
    CHECK(num(d[i][4]) == doctest::Approx(num(d[i][6])).epsilon(1e-9));
  }

  CHECK(run_cli({"scan", "--mu", "0.6", "--kappa-min", "0", "--kappa-max", "1", "--steps", "1"}).code == 2);
  CHECK(run_cli({"scan", "--mu", "0.6", "--kappa-min", "-1", "--kappa-max", "1", "--steps", "3"}).code == 2);
  CHECK(run_cli({"scan", "--mu", "0.6", "--kappa-min", "0", "--kappa-max", "1", "--steps", "3", "--baselines", "x"})
            .code == 2);
}

TEST_CASE("scan flags unconverged points and keeps going") {
  ::setenv("RABI_QES_NMAX", "16", 1);
  const auto r = run_cli({"scan", "--mu", "0.6", "--kappa-min", "0", "--kappa-max", "2", "--steps", "3"});
  ::unsetenv("RABI_QES_NMAX");
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[3].back() == "0");
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("wavefunction") {
  const auto r = run_cli({"wavefunction", "--n", "1", "--mu", "0.6", "--root", "0", "--samples", "5"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"z", "psi1", "psi2", "residual3a", "residual3b"});
  CHECK(num(rows[2][0]) == doctest::Approx(-0.4).epsilon(1e-15));
  CHECK(num(rows[2][1]) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(num(rows[2][2]) == doctest::Approx(5.0 / 3).epsilon(1e-14));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(num(rows[i][3])) < 1e-10);
    CHECK(std::abs(num(rows[i][4])) < 1e-10);
  }

  const auto mid = parse_csv(run_cli({"wavefunction", "--n", "1", "--mu", "0.6", "--root", "0", "--samples", "1"}).out);
  REQUIRE(mid.size() == 2);
  CHECK(num(mid[1][0]) == 0);

  CHECK(run_cli({"wavefunction", "--n", "1", "--mu", "0.6", "--root", "1", "--samples", "5"}).code == 2);
  CHECK(run_cli({"wavefunction", "--n", "2", "--mu", "0.5", "--root", "1", "--samples", "3"}).code == 0);
}

TEST_CASE("verify") {
  const auto g = run_cli({"verify", "--suite", "golden"});
  CHECK(g.code == 0);
  const auto doc = nlohmann::json::parse(g.out);
  CHECK(doc["all_pass"] == true);
  CHECK(doc["checks"].size() == 3);
  CHECK(!doc.contains("metadata"));

  const auto o = nlohmann::json::parse(run_cli({"verify", "--suite", "oracle"}).out);
  CHECK(o["all_pass"] == true);
  CHECK(o["checks"].size() == 3);

  const auto stamped = nlohmann::json::parse(run_cli({"verify", "--suite", "golden", "--timestamp"}).out);
  CHECK(stamped["metadata"].contains("generated_at"));

  CHECK(run_cli({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("usage contract") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"spectrum", "--kappa", "0.4", "--mu", "0.6", "--bogus"}).code == 2);
  CHECK(run_cli({"condition-poly", "--n", "1", "--format", "xml"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);

  // --out writes the same bytes as stdout
  const auto path = std::filesystem::temp_directory_path() / "rabi_qes_cli_out.csv";
  CHECK(run_cli({"condition-poly", "--n", "3", "--out", path.string()}).code == 0);
  std::ifstream f(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(written == run_cli({"condition-poly", "--n", "3"}).out);
  CHECK(written.find('\r') == std::string::npos);
  std::filesystem::remove(path);
}
