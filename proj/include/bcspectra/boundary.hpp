#ifndef BCSPECTRA_BOUNDARY_HPP
#define BCSPECTRA_BOUNDARY_HPP

#include <cstdint>
#include <variant>

#include "bcspectra/current.hpp"

namespace bcs {

constexpr double kUnitarityTol = 1e-10;
constexpr double kRankTol = 1e-10;  // relative singular-value threshold

// Admissible boundary condition in standardized form: the right-mover
// amplitudes at the boundary equal U times the left-mover amplitudes,
// U unitary of order N/2. Requires a balanced mover split.
class BoundaryCondition {
public:
  BoundaryCondition(CurrentDiagonalization diag, Matrix u);

  const CurrentDiagonalization& diag() const { return diag_; }
  const Matrix& u() const { return u_; }
  int relations() const { return static_cast<int>(u_.rows()); }

private:
  CurrentDiagonalization diag_;
  Matrix u_;
};

BoundaryCondition standard_bc(CurrentDiagonalization diag, Matrix u);

// One-parameter family for two degrees of freedom: U = exp(-i nu).
BoundaryCondition u1_bc_from_angle(CurrentDiagonalization diag, double nu);

// Relation matrix B with B Psi[psi(0)] = 0 iff psi satisfies the boundary
// condition; B = T+ - U T- with rows orthonormalized.
Matrix raw_relation_matrix(const BoundaryCondition& bc);

// Mirrored form for a right-hand boundary: T- - U T+ (outgoing left-movers
// from incoming right-movers), rows orthonormalized.
Matrix mirrored_relation_matrix(const BoundaryCondition& bc);

// Verdicts for arbitrary boundary relations C+ Psi~+ = C- Psi~-.
struct Insufficient {
  int rank_deficit;  // total shortfall of rank(C±) against the mover counts
};
struct NotCurrentConserving {
  BoundaryTraceVector witness;  // satisfies the relations, carries nonzero current
};
struct SymmetricOnly {
  int subspace_dim;  // dimension of the solution space, below N/2
};
struct Admissible {
  Matrix u;
};
using BoundaryClassification =
    std::variant<Insufficient, NotCurrentConserving, SymmetricOnly, Admissible>;

BoundaryClassification classify_relations(const CurrentDiagonalization& diag,
                                          const Matrix& c_plus, const Matrix& c_minus);

// Converts a raw relation matrix on trace vectors into mover-space relation
// matrices (C+, C-) suitable for classify_relations.
std::pair<Matrix, Matrix> mover_relations_from_raw(const CurrentDiagonalization& diag,
                                                   const Matrix& raw);

// Canonical current-nullifying relations for an unbalanced split N+ > N-:
// the first N- right-mover amplitudes equal u times the left movers, the
// remaining N+ - N- are nullified. The result classifies as SymmetricOnly.
Matrix symmetric_only_bc(const CurrentDiagonalization& diag, const Matrix& u);

// Same Hilbert space re-expressed at a different length scale: recomputes the
// diagonalization at l_new and recovers the unitary whose relation row space
// matches the input's.
BoundaryCondition reparameterize_length(const BoundaryCondition& bc, double l_new);

// Haar-distributed unitary, deterministic in the seed (hand-rolled gaussians,
// stable across platforms).
Matrix haar_unitary(int dim, std::uint64_t seed);

// Spectral-norm distance between the orthogonal projectors onto the row
// spaces of a and b (largest principal-angle sine).
double row_space_distance(const Matrix& a, const Matrix& b);

}  // namespace bcs

#endif
