#ifndef BCSPECTRA_CLI_HPP
#define BCSPECTRA_CLI_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "bcspectra/io.hpp"

namespace bcs::cli {

// Command implementations return the full report as a string so outputs are
// byte-deterministic and testable in-process; main() only routes them to
// stdout or a file.

struct AnalyzeOptions {
  std::string model_path;
  double l = 1.0;
  std::string format = "text";  // text | json | csv
};
std::string run_analyze(const AnalyzeOptions& opt);

struct SolveOptions {
  std::string model_path;
  std::string bc_path;
  double l = 1.0;
  std::pair<double, double> window{0.0, 0.0};
  int grid = 128;
  std::string psi_out;    // optional CSV of the wavefunction
  double psi_max = 0.0;   // sample range [0, psi_max]
  int psi_samples = 0;
};
std::string run_solve(const SolveOptions& opt);

struct SegmentOptions {
  std::string model_path;
  std::string bc_path;
  std::string bc_right_path;  // defaults to bc_path
  double length = 0.0;
  double l = 1.0;
  std::pair<double, double> window{0.0, 0.0};
  int grid = 128;
  std::string psi_out;
  int psi_samples = 0;
};
std::string run_segment(const SegmentOptions& opt);

struct ScanOptions {
  std::string model_path;
  double l = 1.0;
  int nu_grid = 0;       // > 0: U(1) angle sweep over (-pi, pi]
  int haar_samples = 0;  // > 0: Haar-random unitaries
  std::uint64_t seed = 0;
  std::pair<double, double> window{0.0, 0.0};
  int grid = 128;
};
std::string run_scan(const ScanOptions& opt);

// Returns (exit code, JSON summary).
std::pair<int, std::string> run_verify(std::uint64_t seed);

std::string run_demo(const std::string& name);

}  // namespace bcs::cli

#endif
