#ifndef BCSPECTRA_CURRENT_HPP
#define BCSPECTRA_CURRENT_HPP

#include <memory>
#include <utility>
#include <vector>

#include "bcspectra/hamiltonian.hpp"

namespace bcs {

constexpr double kCurrentDegeneracyTol = 1e-10;  // relative, eigenvalue magnitude

// One entry of the boundary trace vector: the value of (-i l d/dx)^n psi_m at
// the boundary. `component` is the user's component index.
struct TraceSlot {
  int deriv_order;
  int component;
};

// Ordering of the trace-vector entries: derivative order ascending, components
// in canonical (ascending top order) order within each derivative level. For
// equal top orders this is (psi, p psi, p^2 psi, ...) stacked per component.
class TraceLayout {
public:
  TraceLayout() = default;
  static TraceLayout for_hamiltonian(const PolyMatrixHamiltonian& h);
  static TraceLayout for_orders(const std::vector<int>& top_orders);

  int size() const { return static_cast<int>(slots_.size()); }
  const std::vector<TraceSlot>& slots() const { return slots_; }
  const TraceSlot& slot(int i) const { return slots_[i]; }

  // Slot index for ((-i l d/dx)^n psi_m); throws LayoutMismatch if absent.
  int index_of(int deriv_order, int component) const;

  bool operator==(const TraceLayout& other) const;

private:
  explicit TraceLayout(std::vector<TraceSlot> slots) : slots_(std::move(slots)) {}
  std::vector<TraceSlot> slots_;
};

// Trace vector of a wave function at the boundary, in TraceLayout order, with
// the length scale l that makes all entries commensurable.
struct BoundaryTraceVector {
  Vector values;
  double l = 1.0;
};

// Trace vector of the plane-wave solution chi e^{ipx} evaluated at x = 0:
// slot (n, m) holds (l p)^n chi_m.
BoundaryTraceVector plane_wave_trace(const TraceLayout& layout, Complex p, const Vector& chi,
                                     double l);

// Current matrix J(l) on the trace layout. Block rule: the entry coupling
// slots (a, m) and (b, m') is h_{a+b+1}(m, m') / l^{a+b}, zero once a+b+1
// exceeds the top order. Hermitian by construction.
std::pair<TraceLayout, Matrix> build_current_matrix(const PolyMatrixHamiltonian& h, double l);

// Sesquilinear current form Psi_a^dag J Psi_b; real and equal to the physical
// boundary current when a == b.
Complex current_form(const TraceLayout& layout, const Matrix& j, const BoundaryTraceVector& a,
                     const BoundaryTraceVector& b);

// Eigendecomposition of the current matrix split by eigenvalue sign, plus the
// stretch maps T± that send a trace vector to the normalized right/left-mover
// amplitudes (rows sqrt|J_nu| s_nu^dag). Immutable.
class CurrentDiagonalization {
public:
  CurrentDiagonalization(TraceLayout layout, Matrix j, double l);

  const TraceLayout& layout() const { return layout_; }
  const Matrix& j_matrix() const { return j_; }
  double l() const { return l_; }

  const RealVector& eigenvalues() const { return eigvals_; }  // sorted descending
  const Matrix& eigenvectors() const { return eigvecs_; }     // columns, positive first

  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  bool balanced() const { return n_plus_ == n_minus_; }

  const Matrix& t_plus() const { return t_plus_; }    // n_plus x N
  const Matrix& t_minus() const { return t_minus_; }  // n_minus x N

  Vector movers_plus(const Vector& trace) const { return t_plus_ * trace; }
  Vector movers_minus(const Vector& trace) const { return t_minus_ * trace; }

  // Trace vector reproducing the given mover amplitudes (inverse stretch).
  Vector trace_from_movers(const Vector& plus, const Vector& minus) const;

  // Set when built through diagonalize_current(h, l); solvers that need the
  // bulk Hamiltonian reach it from here.
  const PolyMatrixHamiltonian* hamiltonian() const { return hamiltonian_.get(); }
  const std::shared_ptr<const PolyMatrixHamiltonian>& hamiltonian_ptr() const {
    return hamiltonian_;
  }
  void attach_hamiltonian(std::shared_ptr<const PolyMatrixHamiltonian> h) {
    hamiltonian_ = std::move(h);
  }

private:
  TraceLayout layout_;
  Matrix j_;
  double l_ = 1.0;
  RealVector eigvals_;
  Matrix eigvecs_;
  int n_plus_ = 0;
  int n_minus_ = 0;
  Matrix t_plus_;
  Matrix t_minus_;
  std::shared_ptr<const PolyMatrixHamiltonian> hamiltonian_;
};

CurrentDiagonalization diagonalize_current(const TraceLayout& layout, const Matrix& j, double l);
CurrentDiagonalization diagonalize_current(const PolyMatrixHamiltonian& h, double l);

// Asserts that the (N+, N-) split is the same for every listed l and returns
// the common pair. A change would contradict the top-order determinacy of the
// sign structure and signals an implementation bug.
std::pair<int, int> sign_structure_invariance(const PolyMatrixHamiltonian& h,
                                              const std::vector<double>& l_values);

namespace detail {

// Raw block assembly without construction-time validation. Test hook: lets
// property tests feed degenerate top-order blocks that the public constructor
// rejects, to exercise the degeneracy theorem from both sides.
Matrix assemble_current_matrix(const std::vector<Matrix>& coeffs,
                               const std::vector<int>& top_orders, const TraceLayout& layout,
                               double l);

}  // namespace detail

}  // namespace bcs

#endif
