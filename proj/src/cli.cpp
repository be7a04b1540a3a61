#include "bcspectra/cli.hpp"

#include <cmath>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <thread>

#include "bcspectra/models.hpp"
#include "bcspectra/spectra.hpp"
#include "bcspectra/verify.hpp"

namespace bcs::cli {

namespace {

using io::CsvWriter;
using io::format_double;
using json = nlohmann::json;
using std::numbers::pi;

void check_window(std::pair<double, double> window) {
  if (!(window.first < window.second))
    throw ConfigError("window must satisfy lo < hi");
}

void check_grid(int grid) {
  if (grid < 64) throw ConfigError("grid must be at least 64 points");
}

void check_l(double l) {
  if (!(l > 0)) throw ConfigError("length scale l must be positive");
}

json state_to_json(const BoundStateResult& state) {
  json momenta = json::array();
  json vectors = json::array();
  for (const auto& sol : state.solutions) {
    momenta.push_back(io::complex_to_json(sol.p));
    json chi = json::array();
    for (Eigen::Index i = 0; i < sol.chi.size(); ++i)
      chi.push_back(io::complex_to_json(sol.chi(i)));
    vectors.push_back(std::move(chi));
  }
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < state.coeffs.size(); ++i)
    coeffs.push_back(io::complex_to_json(state.coeffs(i)));
  return json{{"energy", state.energy},
              {"momenta", std::move(momenta)},
              {"eigenvectors", std::move(vectors)},
              {"coefficients", std::move(coeffs)},
              {"det_residual", state.det_residual},
              {"bc_residual", state.bc_residual},
              {"norm_constant", state.norm_constant}};
}

json segment_state_to_json(const SegmentState& state) {
  json momenta = json::array();
  for (const auto& sol : state.solutions) momenta.push_back(io::complex_to_json(sol.p));
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < state.coeffs.size(); ++i)
    coeffs.push_back(io::complex_to_json(state.coeffs(i)));
  return json{{"energy", state.energy},
              {"momenta", std::move(momenta)},
              {"coefficients", std::move(coeffs)},
              {"det_residual", state.det_residual},
              {"bc_residual", state.bc_residual},
              {"norm_constant", state.norm_constant}};
}

std::string psi_csv(const Matrix& psi, const std::vector<double>& xs) {
  std::vector<std::string> columns{"x"};
  for (Eigen::Index c = 0; c < psi.rows(); ++c) {
    columns.push_back("re_psi_" + std::to_string(c + 1));
    columns.push_back("im_psi_" + std::to_string(c + 1));
  }
  CsvWriter csv(columns);
  for (size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::optional<double>> row{xs[i]};
    for (Eigen::Index c = 0; c < psi.rows(); ++c) {
      row.emplace_back(psi(c, i).real());
      row.emplace_back(psi(c, i).imag());
    }
    csv.add_row(row);
  }
  return csv.str();
}

// Index-deterministic parallel map: workers take strided rows, the caller
// emits in order afterwards. The first worker exception is rethrown.
template <typename Fn>
void parallel_rows(int count, Fn&& fn) {
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(count)));
  if (workers <= 1 || count < 8) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&fn, &errors, w, workers, count] {
      try {
        for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers)) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::string run_analyze(const AnalyzeOptions& opt) {
  check_l(opt.l);
  const PolyMatrixHamiltonian h = io::load_model(opt.model_path);
  const CurrentDiagonalization diag = diagonalize_current(h, opt.l);

  bool stable = true;
  std::string stability_note;
  try {
    sign_structure_invariance(h, {0.1 * opt.l, opt.l, 10.0 * opt.l});
  } catch (const Error& err) {
    stable = false;
    stability_note = err.what();
  }

  const bool admissible = diag.balanced();
  const std::string verdict =
      admissible ? "admissible family exists (U(" + std::to_string(diag.n_plus()) + "))"
                 : "no admissible boundary conditions: unequal mover counts, a boundary "
                   "cannot be introduced";

  if (opt.format == "json") {
    json j;
    j["l"] = diag.l();
    json layout = json::array();
    for (const TraceSlot& s : diag.layout().slots())
      layout.push_back(json::array({s.deriv_order, s.component}));
    j["layout"] = std::move(layout);
    j["j_matrix"] = io::matrix_to_json(diag.j_matrix());
    json eigs = json::array();
    for (Eigen::Index i = 0; i < diag.eigenvalues().size(); ++i)
      eigs.push_back(diag.eigenvalues()(i));
    j["eigenvalues"] = std::move(eigs);
    j["n_plus"] = diag.n_plus();
    j["n_minus"] = diag.n_minus();
    j["admissible_family"] = admissible;
    j["verdict"] = verdict;
    j["sign_structure_stable_over_decade"] = stable;
    return j.dump(2) + "\n";
  }
  if (opt.format == "csv") {
    CsvWriter csv({"index", "eigenvalue", "n_plus", "n_minus"});
    for (Eigen::Index i = 0; i < diag.eigenvalues().size(); ++i)
      csv.add_row({static_cast<double>(i), diag.eigenvalues()(i),
                   static_cast<double>(diag.n_plus()), static_cast<double>(diag.n_minus())});
    return csv.str();
  }

  std::ostringstream out;
  out << "model: " << opt.model_path << "\n";
  out << "components M = " << h.components() << ", degrees of freedom N = " << h.dof()
      << ", length scale l = " << format_double(diag.l()) << "\n";
  out << "trace layout (derivative order, component):";
  for (const TraceSlot& s : diag.layout().slots())
    out << " (" << s.deriv_order << "," << s.component + 1 << ")";
  out << "\n";
  out << "current matrix J:\n";
  for (Eigen::Index r = 0; r < diag.j_matrix().rows(); ++r) {
    out << "  ";
    for (Eigen::Index c = 0; c < diag.j_matrix().cols(); ++c) {
      const Complex z = diag.j_matrix()(r, c);
      out << "(" << format_double(z.real()) << (z.imag() < 0 ? "-" : "+")
          << format_double(std::abs(z.imag())) << "i) ";
    }
    out << "\n";
  }
  out << "eigenvalues (descending):";
  for (Eigen::Index i = 0; i < diag.eigenvalues().size(); ++i)
    out << " " << format_double(diag.eigenvalues()(i));
  out << "\n";
  out << "mover split (N+, N-) = (" << diag.n_plus() << ", " << diag.n_minus() << ")\n";
  out << "verdict: " << verdict << "\n";
  out << "sign structure over l in {" << format_double(0.1 * opt.l) << ", "
      << format_double(opt.l) << ", " << format_double(10.0 * opt.l)
      << "}: " << (stable ? "invariant" : stability_note) << "\n";
  return out.str();
}

std::string run_solve(const SolveOptions& opt) {
  check_l(opt.l);
  check_window(opt.window);
  check_grid(opt.grid);
  const PolyMatrixHamiltonian h = io::load_model(opt.model_path);
  const CurrentDiagonalization diag = diagonalize_current(h, opt.l);
  const BoundaryCondition bc = io::resolve_bc(io::load_bc(opt.bc_path), diag);

  const auto states = solve_half_line(bc, opt.window, opt.grid);

  json j;
  j["model"] = opt.model_path;
  j["bc"] = opt.bc_path;
  j["l"] = opt.l;
  j["window"] = json::array({opt.window.first, opt.window.second});
  j["grid"] = opt.grid;
  json out_states = json::array();
  for (const auto& state : states) out_states.push_back(state_to_json(state));
  j["states"] = std::move(out_states);

  if (!opt.psi_out.empty() && !states.empty()) {
    const int samples = opt.psi_samples > 1 ? opt.psi_samples : 256;
    const double x_max = opt.psi_max > 0 ? opt.psi_max : 10.0;
    std::vector<double> xs(samples);
    for (int i = 0; i < samples; ++i)
      xs[i] = x_max * static_cast<double>(i) / (samples - 1);
    io::write_file(opt.psi_out, psi_csv(wavefunction(states.front(), xs), xs));
    j["psi_csv"] = opt.psi_out;
  }
  return j.dump(2) + "\n";
}

std::string run_segment(const SegmentOptions& opt) {
  check_l(opt.l);
  check_window(opt.window);
  check_grid(opt.grid);
  if (!(opt.length > 0)) throw ConfigError("segment length -X must be positive");
  const PolyMatrixHamiltonian h = io::load_model(opt.model_path);
  const CurrentDiagonalization diag = diagonalize_current(h, opt.l);
  const BoundaryCondition left = io::resolve_bc(io::load_bc(opt.bc_path), diag);
  const BoundaryCondition right = io::resolve_bc(
      io::load_bc(opt.bc_right_path.empty() ? opt.bc_path : opt.bc_right_path), diag);

  const auto states = solve_segment(h, left, right, opt.length, opt.window, opt.grid);

  json j;
  j["model"] = opt.model_path;
  j["bc_left"] = opt.bc_path;
  j["bc_right"] = opt.bc_right_path.empty() ? opt.bc_path : opt.bc_right_path;
  j["length"] = opt.length;
  j["l"] = opt.l;
  j["window"] = json::array({opt.window.first, opt.window.second});
  j["grid"] = opt.grid;
  json out_states = json::array();
  for (const auto& state : states) out_states.push_back(segment_state_to_json(state));
  j["states"] = std::move(out_states);

  if (!opt.psi_out.empty() && !states.empty()) {
    const int samples = opt.psi_samples > 1 ? opt.psi_samples : 256;
    std::vector<double> xs(samples);
    for (int i = 0; i < samples; ++i)
      xs[i] = opt.length * static_cast<double>(i) / (samples - 1);
    io::write_file(opt.psi_out, psi_csv(segment_wavefunction(states.front(), xs), xs));
    j["psi_csv"] = opt.psi_out;
  }
  return j.dump(2) + "\n";
}

std::string run_scan(const ScanOptions& opt) {
  check_l(opt.l);
  check_window(opt.window);
  check_grid(opt.grid);
  if ((opt.nu_grid > 0) == (opt.haar_samples > 0))
    throw ConfigError("scan needs exactly one of --nu-grid or --haar");

  const PolyMatrixHamiltonian h = io::load_model(opt.model_path);
  const CurrentDiagonalization diag = diagonalize_current(h, opt.l);
  if (!diag.balanced())
    throw Error(Errc::unequal_mover_counts,
                "unequal mover counts: no admissible boundary conditions to scan");

  struct Row {
    double parameter;
    std::vector<double> energies;
    double max_bc_residual = 0.0;
  };
  const int count = opt.nu_grid > 0 ? opt.nu_grid : opt.haar_samples;
  std::vector<Row> rows(count);

  parallel_rows(count, [&](int k) {
    BoundaryCondition bc = [&] {
      if (opt.nu_grid > 0) {
        const double nu = -pi + 2.0 * pi * static_cast<double>(k + 1) / opt.nu_grid;
        return u1_bc_from_angle(diag, nu);
      }
      return standard_bc(diag, haar_unitary(diag.n_plus(), opt.seed + static_cast<std::uint64_t>(k)));
    }();
    Row row;
    row.parameter = opt.nu_grid > 0
                        ? -pi + 2.0 * pi * static_cast<double>(k + 1) / opt.nu_grid
                        : static_cast<double>(k);
    for (const auto& state : solve_half_line(bc, opt.window, opt.grid)) {
      row.energies.push_back(state.energy);
      row.max_bc_residual = std::max(row.max_bc_residual, state.bc_residual);
    }
    rows[static_cast<size_t>(k)] = std::move(row);
  });

  size_t max_states = 0;
  for (const Row& row : rows) max_states = std::max(max_states, row.energies.size());

  std::vector<std::string> columns{opt.nu_grid > 0 ? "nu" : "sample"};
  columns.push_back("n_states");
  for (size_t i = 0; i < max_states; ++i) columns.push_back("e" + std::to_string(i + 1));
  columns.push_back("max_bc_residual");

  CsvWriter csv(columns);
  for (const Row& row : rows) {
    std::vector<std::optional<double>> cells{row.parameter,
                                             static_cast<double>(row.energies.size())};
    for (size_t i = 0; i < max_states; ++i)
      cells.push_back(i < row.energies.size() ? std::optional<double>(row.energies[i])
                                              : std::nullopt);
    cells.push_back(row.energies.empty() ? std::nullopt
                                         : std::optional<double>(row.max_bc_residual));
    csv.add_row(cells);
  }
  return csv.str();
}

std::pair<int, std::string> run_verify(std::uint64_t seed) {
  const auto results = verify::run_all(seed);
  bool all_pass = true;
  json checks = json::array();
  for (const auto& result : results) {
    all_pass = all_pass && result.pass;
    checks.push_back(json{{"name", result.name}, {"pass", result.pass}, {"detail", result.detail}});
  }
  json j{{"seed", seed}, {"all_pass", all_pass}, {"checks", std::move(checks)}};
  return {all_pass ? 0 : 1, j.dump(2) + "\n"};
}

namespace {

std::string demo_quadratic() {
  const QuadraticModel model(1.0, 1.0);
  const PolyMatrixHamiltonian h = quadratic_hamiltonian(model.h2);
  const CurrentDiagonalization diag = diagonalize_current(h, model.l);
  CsvWriter csv({"nu", "L", "analytic_energy", "numeric_energy", "abs_error"});
  for (int k = 0; k < 33; ++k) {
    const double nu = -pi + (pi - 0.2) * (k + 0.5) / 33.0;  // inside (-pi, 0)
    const double L = angle_to_length(model.l, nu);
    const double expected = *quadratic_bound_energy(model, L);
    const auto states = solve_half_line(u1_bc_from_angle(diag, nu),
                                        {1.5 * expected, 0.5 * expected}, 96);
    std::optional<double> numeric, error;
    if (!states.empty()) {
      numeric = states.front().energy;
      error = std::abs(*numeric - expected);
    }
    csv.add_row({nu, L, expected, numeric, error});
  }
  return csv.str();
}

std::string demo_linear() {
  const LinearTwoBandModel model(1.0, 1.0);
  const PolyMatrixHamiltonian h = linear_hamiltonian(model.vz, model.dx);
  const CurrentDiagonalization diag = diagonalize_current(h, 1.0);
  CsvWriter csv({"nu", "analytic_energy", "numeric_energy", "abs_error", "numeric_im_p"});
  for (int k = 0; k < 24; ++k) {
    const double nu = -pi + 2.0 * pi * (k + 0.5) / 24.0;
    const auto expected = linear_bound_state(model, nu);
    const auto states =
        solve_half_line(u1_bc_from_angle(diag, nu), {-0.999, 0.999}, 96);
    std::vector<std::optional<double>> cells{nu};
    cells.push_back(expected ? std::optional<double>(expected->first) : std::nullopt);
    if (!states.empty()) {
      cells.push_back(states.front().energy);
      cells.push_back(expected ? std::optional<double>(std::abs(states.front().energy -
                                                                expected->first))
                               : std::nullopt);
      cells.push_back(states.front().solutions.front().p.imag());
    } else {
      cells.push_back(std::nullopt);
      cells.push_back(std::nullopt);
      cells.push_back(std::nullopt);
    }
    csv.add_row(cells);
  }
  return csv.str();
}

std::string demo_well() {
  CsvWriter csv({"k0x0", "L0", "exact_shallow_energy", "effective_bc_energy", "rel_error"});
  for (double delta : {0.10, 0.08, 0.05, 0.03, 0.01}) {
    const PotentialWellModel model(1.0, 1.0, pi / 2 + delta);
    const double L0 = well_effective_length(model);
    const auto exact = well_exact_spectrum(model);
    const double shallow = exact.back();  // nearest zero
    const double predicted = -model.h2 / (L0 * L0);
    csv.add_row({pi / 2 + delta, L0, shallow, predicted,
                 std::abs(predicted - shallow) / std::abs(shallow)});
  }
  return csv.str();
}

std::string demo_reduction() {
  const LinearTwoBandModel model(1.0, 1.0);
  const auto [h2_eff, l2] = low_energy_reduction(model);
  const PolyMatrixHamiltonian h = linear_hamiltonian(model.vz, model.dx);
  const CurrentDiagonalization diag = diagonalize_current(h, 1.0);
  CsvWriter csv({"nu", "full_model_energy", "reduced_model_energy", "ratio_to_dx_nu4"});
  for (int k = 0; k < 10; ++k) {
    const double nu = -0.02 - 0.18 * k / 9.0;
    const auto states =
        solve_half_line(u1_bc_from_angle(diag, nu), {0.95, 1.0 - 1e-7}, 96);
    const double ec1 = states.front().energy;
    const double L2 = l2 / std::tan(0.5 * nu);
    const double reduced = model.dx - h2_eff / (L2 * L2);
    csv.add_row({nu, ec1, reduced,
                 std::abs(ec1 - reduced) / (model.dx * std::pow(nu, 4.0))});
  }
  return csv.str();
}

std::string demo_n4() {
  CsvWriter csv({"h2", "h4", "l", "closed_form_top", "numeric_top", "max_abs_diff"});
  const std::vector<std::array<double, 3>> cases = {
      {1.0, 1.0, 1.0}, {0.0, 1.0, 1.0}, {1.0, 1.0, 10.0}, {-2.0, 0.7, 0.5}, {3.0, -1.3, 2.0}};
  for (const auto& [h2, h4, l] : cases) {
    const auto closed = n4_current_eigenvalues(h2, h4, l);
    const PolyMatrixHamiltonian h = quartic_hamiltonian(h2, h4);
    const CurrentDiagonalization diag = diagonalize_current(h, l);
    double max_diff = 0.0;
    for (int i = 0; i < 4; ++i)
      max_diff = std::max(max_diff, std::abs(closed[i] - diag.eigenvalues()(i)));
    csv.add_row({h2, h4, l, closed[0], diag.eigenvalues()(0), max_diff});
  }
  return csv.str();
}

}  // namespace

std::string run_demo(const std::string& name) {
  if (name == "quadratic") return demo_quadratic();
  if (name == "linear") return demo_linear();
  if (name == "well") return demo_well();
  if (name == "reduction") return demo_reduction();
  if (name == "n4") return demo_n4();
  throw ConfigError("unknown demo '" + name +
                    "'; expected quadratic|linear|well|reduction|n4");
}

}  // namespace bcs::cli
