#ifndef BCSPECTRA_MODELS_HPP
#define BCSPECTRA_MODELS_HPP

#include <array>
#include <optional>

#include "bcspectra/hamiltonian.hpp"

namespace bcs {

// Closed-form reference models. These provide exact oracles for the numerical
// engine: the one-component quadratic model with its length-parameterized
// boundary condition, the two-band linear model, and the potential-well
// realization of the quadratic boundary condition.

struct QuadraticModel {
  double h2;  // > 0; the h2 < 0 sector is excluded
  double l;   // > 0

  QuadraticModel(double h2_in, double l_in = 1.0);
};

struct LinearTwoBandModel {
  double vz;  // > 0
  double dx;  // > 0

  LinearTwoBandModel(double vz_in, double dx_in);
};

struct PotentialWellModel {
  double h2;  // > 0
  double v0;  // well depth, > 0
  double x0;  // well width, > 0

  PotentialWellModel(double h2_in, double v0_in, double x0_in);
};

PolyMatrixHamiltonian quadratic_hamiltonian(double h2);
PolyMatrixHamiltonian linear_hamiltonian(double vz, double dx);
// H(p) = h2 p^2 + h4 p^4, one component.
PolyMatrixHamiltonian quartic_hamiltonian(double h2, double h4);

// Bound-state energy -h2/L^2 for L < 0; no state for L >= 0 or |L| infinite
// (the derivative-free boundary condition only has the threshold state).
std::optional<double> quadratic_bound_energy(const QuadraticModel& model, double L);

// L = l cot(nu/2). Throws SingularAngle at nu = 0 mod 2pi, where L = ±inf.
double angle_to_length(double l, double nu);
// Inverse branch with nu in (-pi, pi]; infinite L maps to the excluded nu = 0.
double length_to_angle(double l, double L);

// Energy and momentum (d cos nu, -i (d/v) sin nu) for -pi < nu < 0; nothing
// otherwise.
std::optional<std::pair<double, Complex>> linear_bound_state(const LinearTwoBandModel& model,
                                                             double nu);

// Effective boundary length of a potential wall of height v_wall: L = 1/kappa,
// kappa = sqrt(v_wall/h2). Hard wall (L -> 0) as the wall grows.
double wall_effective_length(double h2, double v_wall);

// Effective boundary length of the well: L0 = tan(k0 x0)/k0, k0 = sqrt(v0/h2).
// Returns ±inf at the resonant widths cos(k0 x0) = 0 where a state sits
// exactly at zero energy.
double well_effective_length(const PotentialWellModel& model);

// All bound-state energies in (-v0, 0) of the exact well problem, ascending.
std::vector<double> well_exact_spectrum(const PotentialWellModel& model, int max_states = 64);

// Quadratic model describing the upper-band minimum of the linear model:
// returns (h2, l2) = (vz^2/(2 dx), vz/(2 dx)); the boundary angle carries over.
std::pair<double, double> low_energy_reduction(const LinearTwoBandModel& model);

// Closed-form current-matrix spectrum of h2 p^2 + h4 p^4:
// (±sqrt(4 J4^2 + J2^2) ± J2)/2 with J2 = h2/l, J4 = h4/l^3, descending.
std::array<double, 4> n4_current_eigenvalues(double h2, double h4, double l);

}  // namespace bcs

#endif
