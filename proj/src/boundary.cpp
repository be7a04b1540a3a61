#include "bcspectra/boundary.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace bcs {

namespace {

int rank_of(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  while (r < sv.size() && sv(r) > kRankTol * sv(0)) ++r;
  return r;
}

// Orthonormal basis of the null space (columns).
Matrix null_space(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int r = 0;
  while (r < sv.size() && sv(r) > kRankTol * std::max(smax, 1e-300)) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

// Orthonormalizes the rows, preserving the row space.
Matrix orthonormal_rows(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a.adjoint());
  Matrix q = qr.householderQ() * Matrix::Identity(a.cols(), a.rows());
  return q.adjoint();
}

// Nearest unitary in Frobenius norm (polar factor).
Matrix project_unitary(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

BoundaryCondition::BoundaryCondition(CurrentDiagonalization diag, Matrix u)
    : diag_(std::move(diag)), u_(std::move(u)) {
  if (!diag_.balanced()) {
    std::ostringstream os;
    os << "mover split (" << diag_.n_plus() << "," << diag_.n_minus()
       << ") is unbalanced; no admissible boundary condition exists";
    throw Error(Errc::unequal_mover_counts, os.str());
  }
  const int half = diag_.n_plus();
  if (u_.rows() != half || u_.cols() != half)
    throw Error(Errc::wrong_dimension, "U must be square of order N/2");
  const double dev = (u_.adjoint() * u_ - Matrix::Identity(half, half)).cwiseAbs().maxCoeff();
  if (dev > kUnitarityTol) {
    std::ostringstream os;
    os << "U deviates from unitarity by " << dev;
    throw Error(Errc::non_unitary, os.str());
  }
}

BoundaryCondition standard_bc(CurrentDiagonalization diag, Matrix u) {
  return BoundaryCondition(std::move(diag), std::move(u));
}

BoundaryCondition u1_bc_from_angle(CurrentDiagonalization diag, double nu) {
  if (diag.layout().size() != 2)
    throw Error(Errc::wrong_dimension, "angle parameterization needs exactly two degrees of freedom");
  const double two_pi = 2.0 * std::numbers::pi;
  double reduced = std::fmod(nu, two_pi);
  if (reduced < 0) reduced += two_pi;
  Matrix u(1, 1);
  u(0, 0) = std::exp(Complex(0.0, -reduced));
  return BoundaryCondition(std::move(diag), std::move(u));
}

Matrix raw_relation_matrix(const BoundaryCondition& bc) {
  return orthonormal_rows(bc.diag().t_plus() - bc.u() * bc.diag().t_minus());
}

Matrix mirrored_relation_matrix(const BoundaryCondition& bc) {
  return orthonormal_rows(bc.diag().t_minus() - bc.u() * bc.diag().t_plus());
}

std::pair<Matrix, Matrix> mover_relations_from_raw(const CurrentDiagonalization& diag,
                                                   const Matrix& raw) {
  if (raw.cols() != diag.layout().size())
    throw Error(Errc::layout_mismatch, "relation matrix does not match trace layout");
  // Psi = S D^{-1/2} (Psi~+, Psi~-), so B Psi = [C+ | -C-] (Psi~+, Psi~-).
  Matrix t_inv(diag.layout().size(), diag.layout().size());
  const int n_plus = diag.n_plus();
  for (int i = 0; i < n_plus; ++i)
    t_inv.col(i) = diag.eigenvectors().col(i) / std::sqrt(diag.eigenvalues()(i));
  for (int i = 0; i < diag.n_minus(); ++i)
    t_inv.col(n_plus + i) =
        diag.eigenvectors().col(n_plus + i) / std::sqrt(-diag.eigenvalues()(n_plus + i));
  const Matrix combined = raw * t_inv;
  return {combined.leftCols(n_plus), -combined.rightCols(diag.n_minus())};
}

BoundaryClassification classify_relations(const CurrentDiagonalization& diag,
                                          const Matrix& c_plus, const Matrix& c_minus) {
  if (c_plus.rows() != c_minus.rows() || c_plus.rows() < 1)
    throw Error(Errc::invalid_argument, "relation matrices must share a positive row count");
  if (c_plus.cols() != diag.n_plus() || c_minus.cols() != diag.n_minus())
    throw Error(Errc::layout_mismatch, "relation matrices do not match the mover split");

  const int n_plus = diag.n_plus();
  const int n_minus = diag.n_minus();
  const int n = n_plus + n_minus;

  const int deficit = (n_plus - rank_of(c_plus)) + (n_minus - rank_of(c_minus));
  if (deficit > 0) return Insufficient{deficit};

  // Solution space of C+ v+ = C- v- over stacked movers (v+, v-).
  Matrix stacked(c_plus.rows(), n);
  stacked.leftCols(n_plus) = c_plus;
  stacked.rightCols(n_minus) = -c_minus;
  const Matrix kernel = null_space(stacked);
  const int dim = static_cast<int>(kernel.cols());

  // Current restricted to the solution space must be a null form.
  if (dim > 0) {
    const Matrix plus = kernel.topRows(n_plus);
    const Matrix minus = kernel.bottomRows(n_minus);
    const Matrix residual = plus.adjoint() * plus - minus.adjoint() * minus;
    Eigen::SelfAdjointEigenSolver<Matrix> es(residual);
    int worst = 0;
    const RealVector magnitudes = es.eigenvalues().cwiseAbs();
    magnitudes.maxCoeff(&worst);
    if (std::abs(es.eigenvalues()(worst)) > 1e-10) {
      const Vector movers = kernel * es.eigenvectors().col(worst);
      BoundaryTraceVector witness;
      witness.l = diag.l();
      witness.values = diag.trace_from_movers(movers.head(n_plus), movers.tail(n_minus));
      return NotCurrentConserving{std::move(witness)};
    }
  }

  if (n_plus != n_minus || 2 * dim < n) return SymmetricOnly{dim};

  // Balanced split with a half-dimensional null-current space: the space is a
  // graph v+ = U v-, with U read off an orthonormal basis.
  const Matrix top = kernel.topRows(n_plus);
  const Matrix bottom = kernel.bottomRows(n_minus);
  Matrix u = project_unitary(top * bottom.inverse());
  return Admissible{std::move(u)};
}

Matrix symmetric_only_bc(const CurrentDiagonalization& diag, const Matrix& u) {
  const int n_plus = diag.n_plus();
  const int n_minus = diag.n_minus();
  if (n_plus == n_minus)
    throw Error(Errc::equal_mover_counts,
                "movers are balanced; use standard_bc for admissible conditions");
  if (n_plus < n_minus)
    throw Error(Errc::invalid_argument, "canonical construction assumes N+ > N-");
  if (u.rows() != n_minus || u.cols() != n_minus)
    throw Error(Errc::wrong_dimension, "u must be square of order N-");
  const double dev =
      (u.adjoint() * u - Matrix::Identity(n_minus, n_minus)).cwiseAbs().maxCoeff();
  if (dev > kUnitarityTol) throw Error(Errc::non_unitary, "u must be unitary");

  Matrix rows(n_plus, diag.layout().size());
  rows.topRows(n_minus) = diag.t_plus().topRows(n_minus) - u * diag.t_minus();
  rows.bottomRows(n_plus - n_minus) = diag.t_plus().bottomRows(n_plus - n_minus);
  return orthonormal_rows(rows);
}

BoundaryCondition reparameterize_length(const BoundaryCondition& bc, double l_new) {
  if (!(l_new > 0.0)) throw Error(Errc::invalid_argument, "length scale must be positive");
  const CurrentDiagonalization& diag = bc.diag();
  const TraceLayout& layout = diag.layout();
  const int n = layout.size();

  // Relation rows act on trace vectors whose slot n carries a factor l^n;
  // rescaling the rows by (l/l')^n keeps the constrained wave-function space
  // fixed while moving to the new scale.
  const Matrix raw = raw_relation_matrix(bc);
  Matrix rescaled = raw;
  for (int c = 0; c < n; ++c)
    rescaled.col(c) *= std::pow(diag.l() / l_new, layout.slot(c).deriv_order);

  // Rebuild the current matrix at l' from the original one: the block rule
  // scales the same way, J'(a,b) = J(a,b) l^{a+b} / l'^{a+b}.
  Matrix j_new = diag.j_matrix();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      j_new(r, c) *= std::pow(diag.l() / l_new,
                              layout.slot(r).deriv_order + layout.slot(c).deriv_order);
  CurrentDiagonalization diag_new(layout, std::move(j_new), l_new);
  diag_new.attach_hamiltonian(diag.hamiltonian_ptr());

  const auto [c_plus, c_minus] = mover_relations_from_raw(diag_new, rescaled);
  BoundaryClassification verdict = classify_relations(diag_new, c_plus, c_minus);
  const Admissible* adm = std::get_if<Admissible>(&verdict);
  if (adm == nullptr)
    throw Error(Errc::unequal_mover_counts,
                "reparameterization lost admissibility; inconsistent inputs");
  BoundaryCondition out(std::move(diag_new), adm->u);

  Matrix check = raw_relation_matrix(out);
  for (int c = 0; c < n; ++c)
    check.col(c) *= std::pow(l_new / diag.l(), layout.slot(c).deriv_order);
  if (row_space_distance(check, raw) > 1e-10)
    throw Error(Errc::internal, "reparameterized relation space drifted");
  return out;
}

Matrix haar_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw Error(Errc::invalid_argument, "dimension must be positive");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  // Box-Muller on explicit uniforms; std::normal_distribution is not
  // guaranteed to produce the same stream across standard libraries.
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  auto gaussian = [&]() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gaussian(), gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    q.col(c) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

double row_space_distance(const Matrix& a, const Matrix& b) {
  const Matrix qa = orthonormal_rows(a);
  const Matrix qb = orthonormal_rows(b);
  const Matrix pa = qa.adjoint() * qa;
  const Matrix pb = qb.adjoint() * qb;
  Eigen::JacobiSVD<Matrix> svd(pa - pb);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

}  // namespace bcs
