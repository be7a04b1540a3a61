#ifndef BCSPECTRA_HAMILTONIAN_HPP
#define BCSPECTRA_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "bcspectra/error.hpp"

namespace bcs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

constexpr double kHermiticityTol = 1e-12;   // relative, construction-time
constexpr double kTopBlockSvTol = 1e-10;    // relative, construction-time

// 1D bulk Hamiltonian H(p) = sum_n h_n p^n for an M-component wave function.
// Coefficient matrices must be hermitian; the top momentum order may differ
// per component (N_m), in which case h_n carries exact zero rows/columns for
// components with N_m < n. Immutable after construction.
class PolyMatrixHamiltonian {
public:
  // coeffs holds h_0 .. h_N with N = max(top_orders); each matrix is M x M,
  // indexed in the caller's component order.
  PolyMatrixHamiltonian(int m, std::vector<int> top_orders, std::vector<Matrix> coeffs);

  int components() const { return m_; }
  const std::vector<int>& top_orders() const { return top_orders_; }
  int top_order() const { return n_max_; }

  // Total degrees of freedom: sum of the per-component top orders. This is
  // both the trace-vector length and the count of momentum roots at fixed
  // energy.
  int dof() const { return nc_; }

  const Matrix& coeff(int n) const;
  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  // Component indices sorted by ascending top order (stable). All internal
  // trace-vector layouts follow this order; user-facing matrices keep the
  // original component order.
  const std::vector<int>& canonical_order() const { return canonical_; }

  Matrix evaluate(Complex p) const;

private:
  int m_ = 0;
  int n_max_ = 0;
  int nc_ = 0;
  std::vector<int> top_orders_;
  std::vector<Matrix> coeffs_;
  std::vector<int> canonical_;
};

// Sorted eigenvalues of H(p) for each real p; row i corresponds to
// p_values[i], columns ascending in energy.
RealMatrix bulk_bands(const PolyMatrixHamiltonian& h, const std::vector<double>& p_values);

// Sampling-based gap report. Band ranges are taken from the sorted-eigenvalue
// curves on a symmetric momentum grid; gaps are the complement of their union
// inside the symmetric energy envelope [-max|e|, +max|e|]. Intervals touching
// the envelope edges stand in for semi-infinite gaps; everything is accurate
// only to the sampling resolution.
struct GapScan {
  std::vector<std::pair<double, double>> intervals;  // open (lo, hi), ascending
  double envelope = 0.0;                             // scan limited to [-envelope, envelope]
  double resolution = 0.0;                           // max adjacent energy step seen on the grid
};

GapScan gap_window(const PolyMatrixHamiltonian& h, std::pair<double, double> p_range,
                   int n_samples);

}  // namespace bcs

#endif
