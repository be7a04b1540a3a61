#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>

#include "bcspectra/cli.hpp"
#include "bcspectra/models.hpp"

using namespace bcs;
using nlohmann::json;
using std::numbers::pi;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& content) {
    path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

}  // namespace

TEST_CASE("model JSON round-trips byte-exactly through save/load/save") {
  // Irrational entries exercise the full decimal round trip.
  std::vector<Matrix> coeffs(3, Matrix::Zero(2, 2));
  coeffs[0](0, 0) = 1.0 / 3.0;
  coeffs[0](0, 1) = Complex(std::sqrt(2.0), -0.1 / 7.0);
  coeffs[0](1, 0) = std::conj(coeffs[0](0, 1));
  coeffs[0](1, 1) = -std::sqrt(5.0);
  coeffs[1](0, 0) = 0.12345678901234567;
  coeffs[1](1, 1) = -2.0 / 9.0;
  coeffs[2](1, 1) = std::exp(1.0);
  const PolyMatrixHamiltonian h(2, {1, 2}, coeffs);

  const std::string first = io::model_to_json(h).dump(2);
  const PolyMatrixHamiltonian reloaded = io::model_from_json(json::parse(first));
  const std::string second = io::model_to_json(reloaded).dump(2);
  CHECK(first == second);
  for (int n = 0; n <= 2; ++n)
    CHECK((h.coeff(n) - reloaded.coeff(n)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("omitted coefficient orders load as zero matrices") {
  const json j = {{"m", 1}, {"top_orders", {2}}, {"coeffs", {{"2", {{{1.0, 0.0}}}}}}};
  const PolyMatrixHamiltonian h = io::model_from_json(j);
  CHECK(h.coeff(0)(0, 0) == Complex(0.0, 0.0));
  CHECK(h.coeff(1)(0, 0) == Complex(0.0, 0.0));
  CHECK(h.coeff(2)(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("malformed model configs raise ConfigError with field context") {
  CHECK_THROWS_AS(io::model_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(io::model_from_json(json{{"m", 1}}), ConfigError);
  CHECK_THROWS_AS(
      io::model_from_json(json{{"m", 2}, {"top_orders", {1}}}), ConfigError);
  // Coefficient order outside 0..N.
  CHECK_THROWS_AS(io::model_from_json(json{{"m", 1},
                                           {"top_orders", {1}},
                                           {"coeffs", {{"5", {{{1.0, 0.0}}}}}}}),
                  ConfigError);
  // Domain-invalid model surfaces as ConfigError on load.
  CHECK_THROWS_AS(io::model_from_json(json{{"m", 1},
                                           {"top_orders", {1}},
                                           {"coeffs", {{"1", {{{0.0, 1.0}}}}}}}),
                  ConfigError);
}

TEST_CASE("bc configs: all three kinds, classification on load") {
  const auto diag = diagonalize_current(quadratic_hamiltonian(1.0), 1.0);

  const io::BcSpec angle = io::bc_from_json(json{{"type", "u1_angle"}, {"nu", -pi / 2}});
  const BoundaryCondition from_angle = io::resolve_bc(angle, diag);
  CHECK(std::abs(from_angle.u()(0, 0) - std::exp(Complex(0.0, pi / 2))) < 1e-12);

  const io::BcSpec unitary = io::bc_from_json(
      json{{"type", "unitary"}, {"u", {{{0.0, 1.0}}}}});
  CHECK(std::abs(io::resolve_bc(unitary, diag).u()(0, 0) - Complex(0.0, 1.0)) < 1e-12);

  const io::BcSpec raw = io::bc_from_json(json{{"type", "raw"},
                                               {"c_plus", {{{1.0, 0.0}}}},
                                               {"c_minus", {{{0.0, 1.0}}}}});
  CHECK(std::abs(io::resolve_bc(raw, diag).u()(0, 0) - Complex(0.0, 1.0)) < 1e-12);

  // Raw relations that break current conservation are rejected on load.
  const io::BcSpec broken = io::bc_from_json(json{{"type", "raw"},
                                                  {"c_plus", {{{1.0, 0.0}}}},
                                                  {"c_minus", {{{2.0, 0.0}}}}});
  CHECK_THROWS_AS(io::resolve_bc(broken, diag), Error);

  CHECK_THROWS_AS(io::bc_from_json(json{{"type", "mystery"}}), ConfigError);
}

TEST_CASE("csv formatting: 17 significant digits, empty cells for absences") {
  io::CsvWriter csv({"a", "b"});
  csv.add_row({0.1, std::nullopt});
  const std::string text = csv.str();
  CHECK(text == "a,b\n0.10000000000000001,\n");
  CHECK(text.find("nan") == std::string::npos);
}

TEST_CASE("scan emission is deterministic and sorted by parameter") {
  const PolyMatrixHamiltonian h = linear_hamiltonian(1.0, 1.0);
  TempFile model("bcspectra_test_model.json", io::model_to_json(h).dump(2));

  cli::ScanOptions opt;
  opt.model_path = model.path.string();
  opt.nu_grid = 12;
  opt.window = {-0.99, 0.99};
  opt.grid = 64;
  const std::string once = cli::run_scan(opt);
  const std::string twice = cli::run_scan(opt);
  CHECK(once == twice);

  // Sorted, and the states obey the closed form on (-pi, 0).
  std::istringstream lines(once);
  std::string line;
  std::getline(lines, line);  // header
  double prev = -4.0;
  int states_seen = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const double nu = std::stod(line.substr(0, comma));
    CHECK(nu > prev);
    prev = nu;
    const int n_states = static_cast<int>(std::stod(line.substr(comma + 1)));
    if (nu > -pi && nu < 0) {
      CHECK(n_states == 1);
      ++states_seen;
    } else {
      CHECK(n_states == 0);
    }
  }
  CHECK(states_seen > 0);
}

TEST_CASE("haar scan rows carry small residuals") {
  // A four-dof one-component model: U(2) boundary conditions.
  const PolyMatrixHamiltonian h = quartic_hamiltonian(-1.0, 1.0);
  TempFile model("bcspectra_test_quartic.json", io::model_to_json(h).dump(2));

  cli::ScanOptions opt;
  opt.model_path = model.path.string();
  opt.haar_samples = 6;
  opt.seed = 3;
  // The band of p^4 - p^2 starts at -1/4; stay below it.
  opt.window = {-2.0, -0.3};
  opt.grid = 64;
  const std::string csv = cli::run_scan(opt);
  CHECK(csv == cli::run_scan(opt));

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("sample,n_states", 0) == 0);
  while (std::getline(lines, line)) {
    const auto last_comma = line.rfind(',');
    const std::string residual = line.substr(last_comma + 1);
    if (!residual.empty()) CHECK(std::stod(residual) < 1e-8);
  }
}

TEST_CASE("analyze json output reports the split and the verdict") {
  const PolyMatrixHamiltonian h = quadratic_hamiltonian(1.0);
  TempFile model("bcspectra_test_analyze.json", io::model_to_json(h).dump(2));
  const std::string text = cli::run_analyze({model.path.string(), 1.0, "json"});
  const json j = json::parse(text);
  CHECK(j["n_plus"] == 1);
  CHECK(j["n_minus"] == 1);
  CHECK(j["admissible_family"] == true);
  CHECK(j["sign_structure_stable_over_decade"] == true);
}

TEST_CASE("demo tables are deterministic") {
  CHECK(cli::run_demo("n4") == cli::run_demo("n4"));
  CHECK_THROWS_AS(cli::run_demo("unknown"), ConfigError);
}

TEST_CASE("config invariants: window ordering and minimum grid") {
  cli::SolveOptions opt;
  opt.model_path = "missing.json";
  opt.bc_path = "missing.json";
  opt.window = {1.0, -1.0};
  CHECK_THROWS_AS(cli::run_solve(opt), ConfigError);
  opt.window = {-1.0, 1.0};
  opt.grid = 32;
  CHECK_THROWS_AS(cli::run_solve(opt), ConfigError);
}
