#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "bcspectra/cli.hpp"

namespace {

// Exit codes: 0 ok, 1 domain error, 2 config/IO error.
constexpr int kDomainError = 1;
constexpr int kConfigError = 2;

std::pair<double, double> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw bcs::ConfigError("window must be 'lo,hi', got '" + text + "'");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw bcs::ConfigError("window must be 'lo,hi', got '" + text + "'");
  }
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty())
    std::cout << content;
  else
    bcs::io::write_file(output_path, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"general boundary conditions for 1D continuum models: current-matrix "
               "analysis, bound-state spectra, parameter scans"};
  app.require_subcommand(1);

  std::string model_path, bc_path, bc_right_path, output_path, psi_out, format = "text";
  std::string window_text, demo_name;
  double l = 1.0, length = 0.0, psi_max = 0.0;
  int grid = 128, nu_grid = 0, haar = 0, psi_samples = 0;
  std::uint64_t seed = 0;

  auto* analyze = app.add_subcommand("analyze", "current matrix, mover split, admissibility");
  analyze->add_option("-m,--model", model_path, "model JSON file")->required();
  analyze->add_option("-l,--length-scale", l, "trace length scale");
  analyze->add_option("--format", format, "text|json|csv");
  analyze->add_option("-o,--output", output_path, "write report to file");

  auto* solve = app.add_subcommand("solve", "half-line bound states");
  solve->add_option("-m,--model", model_path, "model JSON file")->required();
  solve->add_option("-b,--bc", bc_path, "boundary-condition JSON file")->required();
  solve->add_option("-w,--window", window_text, "energy window lo,hi")->required();
  solve->add_option("-n,--grid", grid, "scan grid points (>= 64)");
  solve->add_option("-l,--length-scale", l, "trace length scale");
  solve->add_option("-o,--output", output_path, "write JSON to file");
  solve->add_option("--psi-out", psi_out, "write wavefunction CSV to file");
  solve->add_option("--psi-max", psi_max, "wavefunction sample range");
  solve->add_option("--psi-samples", psi_samples, "wavefunction sample count");

  auto* segment = app.add_subcommand("segment", "finite-segment spectrum");
  segment->add_option("-m,--model", model_path, "model JSON file")->required();
  segment->add_option("-b,--bc", bc_path, "left boundary-condition JSON file")->required();
  segment->add_option("--bc-right", bc_right_path, "right boundary condition (defaults to -b)");
  segment->add_option("-X,--segment-length", length, "segment length")->required();
  segment->add_option("-w,--window", window_text, "energy window lo,hi")->required();
  segment->add_option("-n,--grid", grid, "scan grid points (>= 64)");
  segment->add_option("-l,--length-scale", l, "trace length scale");
  segment->add_option("-o,--output", output_path, "write JSON to file");
  segment->add_option("--psi-out", psi_out, "write wavefunction CSV to file");
  segment->add_option("--psi-samples", psi_samples, "wavefunction sample count");

  auto* scan = app.add_subcommand("scan", "bound-state energies over a boundary-parameter sweep");
  scan->add_option("-m,--model", model_path, "model JSON file")->required();
  scan->add_option("--nu-grid", nu_grid, "number of U(1) angles over (-pi, pi]");
  scan->add_option("--haar", haar, "number of Haar-random unitaries");
  scan->add_option("--seed", seed, "random seed for --haar");
  scan->add_option("-w,--window", window_text, "energy window lo,hi")->required();
  scan->add_option("-n,--grid", grid, "scan grid points (>= 64)");
  scan->add_option("-l,--length-scale", l, "trace length scale");
  scan->add_option("-o,--output", output_path, "write CSV to file");

  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("-o,--output", output_path, "write JSON summary to file");

  auto* demo = app.add_subcommand("demo", "closed-form model comparisons (CSV)");
  demo->add_option("name", demo_name, "quadratic|linear|well|reduction|n4")->required();
  demo->add_option("-o,--output", output_path, "write CSV to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (analyze->parsed()) {
      emit(bcs::cli::run_analyze({model_path, l, format}), output_path);
    } else if (solve->parsed()) {
      bcs::cli::SolveOptions opt;
      opt.model_path = model_path;
      opt.bc_path = bc_path;
      opt.l = l;
      opt.window = parse_window(window_text);
      opt.grid = grid;
      opt.psi_out = psi_out;
      opt.psi_max = psi_max;
      opt.psi_samples = psi_samples;
      emit(bcs::cli::run_solve(opt), output_path);
    } else if (segment->parsed()) {
      bcs::cli::SegmentOptions opt;
      opt.model_path = model_path;
      opt.bc_path = bc_path;
      opt.bc_right_path = bc_right_path;
      opt.length = length;
      opt.l = l;
      opt.window = parse_window(window_text);
      opt.grid = grid;
      opt.psi_out = psi_out;
      opt.psi_samples = psi_samples;
      emit(bcs::cli::run_segment(opt), output_path);
    } else if (scan->parsed()) {
      bcs::cli::ScanOptions opt;
      opt.model_path = model_path;
      opt.l = l;
      opt.nu_grid = nu_grid;
      opt.haar_samples = haar;
      opt.seed = seed;
      opt.window = parse_window(window_text);
      opt.grid = grid;
      emit(bcs::cli::run_scan(opt), output_path);
    } else if (verify->parsed()) {
      const auto [code, summary] = bcs::cli::run_verify(seed);
      emit(summary, output_path);
      return code;
    } else if (demo->parsed()) {
      emit(bcs::cli::run_demo(demo_name), output_path);
    }
  } catch (const bcs::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kConfigError;
  } catch (const bcs::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kDomainError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kDomainError;
  }
  return 0;
}
