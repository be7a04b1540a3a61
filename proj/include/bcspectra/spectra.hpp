#ifndef BCSPECTRA_SPECTRA_HPP
#define BCSPECTRA_SPECTRA_HPP

#include "bcspectra/boundary.hpp"

namespace bcs {

constexpr double kRootClusterTol = 1e-8;   // relative momentum separation
constexpr double kDetAcceptTol = 1e-8;     // smallest singular value vs largest
constexpr double kStateResidualTol = 1e-8;

// Plane-wave solution chi e^{ipx} of the stationary equation at fixed energy.
struct ParticularSolution {
  Complex p;
  Vector chi;       // unit norm
  double residual;  // ||(H(p) - e) chi||
};

// All momentum roots of det[H(p) - e] = 0 with eigenvectors, both signs of
// Im p, exactly dof() of them counting multiplicity. Degenerate clusters are
// returned only when a full eigenvector basis exists; defective clusters
// raise DegenerateRootCluster.
std::vector<ParticularSolution> momentum_roots(const PolyMatrixHamiltonian& h, Complex energy);

// The Im p > 0 half at a gap energy; exactly dof()/2 solutions.
std::vector<ParticularSolution> decaying_basis(const PolyMatrixHamiltonian& h, double energy);

// Boundary matrix X(e) applied to a decaying basis, columns normalized to
// unit length for conditioning; scales record the normalization so the
// physical coefficients can be recovered.
struct BoundaryMatrix {
  Matrix x;                  // (N/2) x (N/2)
  RealVector column_scale;   // applied scales; raw column = x.col * scale
};

BoundaryMatrix boundary_matrix(const BoundaryCondition& bc,
                               const std::vector<ParticularSolution>& basis);

struct BoundStateResult {
  double energy;
  std::vector<ParticularSolution> solutions;
  Vector coeffs;         // unit norm before the L2 rescaling
  double det_residual;   // |det| of the column-normalized boundary matrix
  double bc_residual;    // ||Psi~+ - U Psi~-|| of the assembled unit-norm state
  double norm_constant;  // scaling giving unit L2 norm on the half line
};

// Scans the window for zeros of det X(e), refines them, and assembles
// normalized bound states. Empty result when no state exists. The boundary
// condition must have been built from diagonalize_current(h, l) so the bulk
// Hamiltonian is reachable.
std::vector<BoundStateResult> solve_half_line(const BoundaryCondition& bc,
                                              std::pair<double, double> window, int grid_points);

// psi(x) = norm_constant * sum_a c_a chi_a e^{i p_a x}; rows are components.
Matrix wavefunction(const BoundStateResult& state, const std::vector<double>& x_values);

// Finite segment [0, X]. The right boundary relates the outgoing (left-mover)
// amplitudes to the incoming ones, mirroring the left-boundary convention so
// hard walls at both ends reproduce the particle-in-a-box spectrum.
struct SegmentState {
  double energy;
  std::vector<ParticularSolution> solutions;  // all dof() roots
  Vector coeffs;
  double det_residual;
  double bc_residual;    // worse of the two ends
  double norm_constant;  // unit L2 norm on [0, X]
  double length;
};

std::vector<SegmentState> solve_segment(const PolyMatrixHamiltonian& h,
                                        const BoundaryCondition& bc_left,
                                        const BoundaryCondition& bc_right, double length,
                                        std::pair<double, double> window, int grid_points);

// Segment solver on raw relation rows (left rows annihilate the trace at 0,
// right rows the trace at X). Admits symmetric-only relation sets, whose
// overdetermined systems produce an empty spectrum.
std::vector<SegmentState> solve_segment_raw(const PolyMatrixHamiltonian& h,
                                            const CurrentDiagonalization& diag,
                                            const Matrix& raw_left, const Matrix& raw_right,
                                            double length, std::pair<double, double> window,
                                            int grid_points);

Matrix segment_wavefunction(const SegmentState& state, const std::vector<double>& x_values);

}  // namespace bcs

#endif
