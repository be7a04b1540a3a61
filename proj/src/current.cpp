#include "bcspectra/current.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bcs {

TraceLayout TraceLayout::for_orders(const std::vector<int>& top_orders) {
  if (top_orders.empty()) throw Error(Errc::invalid_argument, "no components");
  std::vector<int> canonical(top_orders.size());
  std::iota(canonical.begin(), canonical.end(), 0);
  std::stable_sort(canonical.begin(), canonical.end(),
                   [&top_orders](int a, int b) { return top_orders[a] < top_orders[b]; });
  const int n_max = *std::max_element(top_orders.begin(), top_orders.end());

  std::vector<TraceSlot> slots;
  for (int n = 0; n < n_max; ++n)
    for (int c : canonical)
      if (top_orders[c] > n) slots.push_back({n, c});
  return TraceLayout(std::move(slots));
}

TraceLayout TraceLayout::for_hamiltonian(const PolyMatrixHamiltonian& h) {
  return for_orders(h.top_orders());
}

int TraceLayout::index_of(int deriv_order, int component) const {
  for (size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i].deriv_order == deriv_order && slots_[i].component == component)
      return static_cast<int>(i);
  std::ostringstream os;
  os << "no slot for derivative order " << deriv_order << " of component " << component;
  throw Error(Errc::layout_mismatch, os.str());
}

bool TraceLayout::operator==(const TraceLayout& other) const {
  if (slots_.size() != other.slots_.size()) return false;
  for (size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i].deriv_order != other.slots_[i].deriv_order ||
        slots_[i].component != other.slots_[i].component)
      return false;
  return true;
}

BoundaryTraceVector plane_wave_trace(const TraceLayout& layout, Complex p, const Vector& chi,
                                     double l) {
  BoundaryTraceVector trace;
  trace.l = l;
  trace.values.resize(layout.size());
  for (int i = 0; i < layout.size(); ++i) {
    const TraceSlot& s = layout.slot(i);
    trace.values(i) = std::pow(l * p, s.deriv_order) * chi(s.component);
  }
  return trace;
}

namespace detail {

Matrix assemble_current_matrix(const std::vector<Matrix>& coeffs,
                               const std::vector<int>& top_orders, const TraceLayout& layout,
                               double l) {
  if (!(l > 0.0)) throw Error(Errc::invalid_argument, "length scale must be positive");
  const int n = layout.size();
  const int n_max = *std::max_element(top_orders.begin(), top_orders.end());
  Matrix j = Matrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    const TraceSlot& a = layout.slot(r);
    for (int c = r; c < n; ++c) {
      const TraceSlot& b = layout.slot(c);
      const int order = a.deriv_order + b.deriv_order + 1;
      if (order > n_max) continue;
      const Complex value =
          coeffs[order](a.component, b.component) / std::pow(l, a.deriv_order + b.deriv_order);
      j(r, c) = value;
      j(c, r) = std::conj(value);  // exact hermiticity regardless of input roundoff
    }
  }
  return j;
}

}  // namespace detail

std::pair<TraceLayout, Matrix> build_current_matrix(const PolyMatrixHamiltonian& h, double l) {
  TraceLayout layout = TraceLayout::for_hamiltonian(h);
  Matrix j = detail::assemble_current_matrix(h.coeffs(), h.top_orders(), layout, l);
  return {std::move(layout), std::move(j)};
}

Complex current_form(const TraceLayout& layout, const Matrix& j, const BoundaryTraceVector& a,
                     const BoundaryTraceVector& b) {
  if (a.values.size() != layout.size() || b.values.size() != layout.size())
    throw Error(Errc::layout_mismatch, "trace vector length does not match layout");
  if (j.rows() != layout.size() || j.cols() != layout.size())
    throw Error(Errc::layout_mismatch, "current matrix does not match layout");
  if (a.l != b.l)
    throw Error(Errc::layout_mismatch, "trace vectors use different length scales");
  return (a.values.adjoint() * j * b.values)(0, 0);
}

namespace {

// Deterministic eigenvector convention: the largest-magnitude entry of each
// column is made real positive; ties in eigenvalue are ordered by comparing
// entries lexicographically.
void fix_eigenvector_phase(Matrix& vecs) {
  for (int c = 0; c < vecs.cols(); ++c) {
    int arg = 0;
    double best = -1.0;
    for (int r = 0; r < vecs.rows(); ++r) {
      const double mag = std::abs(vecs(r, c));
      if (mag > best + 1e-14) {
        best = mag;
        arg = r;
      }
    }
    const Complex pivot = vecs(arg, c);
    if (std::abs(pivot) > 0) vecs.col(c) *= std::conj(pivot) / std::abs(pivot);
  }
}

bool column_less(const Matrix& vecs, int a, int b) {
  for (int r = 0; r < vecs.rows(); ++r) {
    const Complex& x = vecs(r, a);
    const Complex& y = vecs(r, b);
    if (std::abs(x.real() - y.real()) > 1e-12) return x.real() < y.real();
    if (std::abs(x.imag() - y.imag()) > 1e-12) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

CurrentDiagonalization::CurrentDiagonalization(TraceLayout layout, Matrix j, double l)
    : layout_(std::move(layout)), j_(std::move(j)), l_(l) {
  if (!(l_ > 0.0)) throw Error(Errc::invalid_argument, "length scale must be positive");
  const int n = layout_.size();
  if (j_.rows() != n || j_.cols() != n)
    throw Error(Errc::layout_mismatch, "current matrix does not match layout");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(j_);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::internal, "current-matrix eigendecomposition failed");

  // Descending eigenvalue order, positive block first.
  eigvals_.resize(n);
  eigvecs_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    eigvals_(i) = solver.eigenvalues()(n - 1 - i);
    eigvecs_.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  fix_eigenvector_phase(eigvecs_);
  for (int lo = 0; lo < n;) {
    int hi = lo + 1;
    while (hi < n && std::abs(eigvals_(hi) - eigvals_(lo)) <
                         1e-12 * std::max(std::abs(eigvals_(lo)), std::abs(eigvals_(hi))))
      ++hi;
    if (hi - lo > 1) {
      std::vector<int> order(hi - lo);
      std::iota(order.begin(), order.end(), lo);
      // Descending lexicographic order keeps identity-like eigenbases in
      // natural component order (first significant component first).
      std::sort(order.begin(), order.end(),
                [this](int a, int b) { return column_less(eigvecs_, b, a); });
      Matrix cols(n, hi - lo);
      RealVector vals(hi - lo);
      for (int k = 0; k < hi - lo; ++k) {
        cols.col(k) = eigvecs_.col(order[k]);
        vals(k) = eigvals_(order[k]);
      }
      eigvecs_.block(0, lo, n, hi - lo) = cols;
      eigvals_.segment(lo, hi - lo) = vals;
    }
    lo = hi;
  }

  const double max_mag = eigvals_.cwiseAbs().maxCoeff();
  const double min_mag = eigvals_.cwiseAbs().minCoeff();
  if (!(min_mag > kCurrentDegeneracyTol * max_mag)) {
    std::ostringstream os;
    os << "current matrix is degenerate (|eig| ratio "
       << (max_mag > 0 ? min_mag / max_mag : 0.0)
       << "); a top-order block must have slipped past validation";
    throw Error(Errc::degenerate_current_matrix, os.str());
  }

  n_plus_ = 0;
  while (n_plus_ < n && eigvals_(n_plus_) > 0) ++n_plus_;
  n_minus_ = n - n_plus_;

  t_plus_.resize(n_plus_, n);
  for (int i = 0; i < n_plus_; ++i)
    t_plus_.row(i) = std::sqrt(eigvals_(i)) * eigvecs_.col(i).adjoint();
  t_minus_.resize(n_minus_, n);
  for (int i = 0; i < n_minus_; ++i)
    t_minus_.row(i) = std::sqrt(-eigvals_(n_plus_ + i)) * eigvecs_.col(n_plus_ + i).adjoint();
}

Vector CurrentDiagonalization::trace_from_movers(const Vector& plus, const Vector& minus) const {
  if (plus.size() != n_plus_ || minus.size() != n_minus_)
    throw Error(Errc::layout_mismatch, "mover vector sizes do not match split");
  const int n = layout_.size();
  Vector trace = Vector::Zero(n);
  for (int i = 0; i < n_plus_; ++i)
    trace += eigvecs_.col(i) * (plus(i) / std::sqrt(eigvals_(i)));
  for (int i = 0; i < n_minus_; ++i)
    trace += eigvecs_.col(n_plus_ + i) * (minus(i) / std::sqrt(-eigvals_(n_plus_ + i)));
  return trace;
}

CurrentDiagonalization diagonalize_current(const TraceLayout& layout, const Matrix& j, double l) {
  return CurrentDiagonalization(layout, j, l);
}

CurrentDiagonalization diagonalize_current(const PolyMatrixHamiltonian& h, double l) {
  auto [layout, j] = build_current_matrix(h, l);
  CurrentDiagonalization diag(std::move(layout), std::move(j), l);
  diag.attach_hamiltonian(std::make_shared<const PolyMatrixHamiltonian>(h));
  return diag;
}

std::pair<int, int> sign_structure_invariance(const PolyMatrixHamiltonian& h,
                                              const std::vector<double>& l_values) {
  if (l_values.size() < 2)
    throw Error(Errc::invalid_argument, "need at least two distinct length scales");
  std::pair<int, int> common{-1, -1};
  for (double l : l_values) {
    // Only the eigenvalue signs matter here. Extreme length scales compress
    // the spectrum (top blocks enter as h_n / l^{n-1}), so this check guards
    // at machine level instead of demanding the full working margin of the
    // stretch construction.
    const auto [layout, j] = build_current_matrix(h, l);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(j, Eigen::EigenvaluesOnly);
    const double max_mag = solver.eigenvalues().cwiseAbs().maxCoeff();
    const double min_mag = solver.eigenvalues().cwiseAbs().minCoeff();
    if (!(min_mag > 1e-13 * max_mag)) {
      std::ostringstream os;
      os << "eigenvalue signs indeterminate at l=" << l << " (|eig| ratio "
         << (max_mag > 0 ? min_mag / max_mag : 0.0) << ")";
      throw Error(Errc::degenerate_current_matrix, os.str());
    }
    int n_plus = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      if (solver.eigenvalues()(i) > 0) ++n_plus;
    const std::pair<int, int> split{n_plus,
                                    static_cast<int>(solver.eigenvalues().size()) - n_plus};
    if (common.first < 0) {
      common = split;
    } else if (split != common) {
      std::ostringstream os;
      os << "mover split changed from (" << common.first << "," << common.second << ") to ("
         << split.first << "," << split.second << ") at l=" << l;
      throw Error(Errc::sign_structure_changed, os.str());
    }
  }
  return common;
}

}  // namespace bcs
