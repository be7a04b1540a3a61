#include "bcspectra/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bcs {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::non_hermitian_coefficient: return "NonHermitianCoefficient";
    case Errc::degenerate_top_order_block: return "DegenerateTopOrderBlock";
    case Errc::block_structure_violation: return "BlockStructureViolation";
    case Errc::empty_range: return "EmptyRange";
    case Errc::degenerate_current_matrix: return "DegenerateCurrentMatrix";
    case Errc::layout_mismatch: return "LayoutMismatch";
    case Errc::sign_structure_changed: return "SignStructureChanged";
    case Errc::unequal_mover_counts: return "UnequalMoverCounts";
    case Errc::equal_mover_counts: return "EqualMoverCounts";
    case Errc::non_unitary: return "NonUnitary";
    case Errc::wrong_dimension: return "WrongDimension";
    case Errc::singular_angle: return "SingularAngle";
    case Errc::degenerate_root_cluster: return "DegenerateRootCluster";
    case Errc::root_count_mismatch: return "RootCountMismatch";
    case Errc::energy_in_band: return "EnergyInBand";
    case Errc::unbalanced_roots: return "UnbalancedRoots";
    case Errc::window_touches_band: return "WindowTouchesBand";
    case Errc::negative_coordinate: return "NegativeCoordinate";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

namespace {

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

PolyMatrixHamiltonian::PolyMatrixHamiltonian(int m, std::vector<int> top_orders,
                                             std::vector<Matrix> coeffs)
    : m_(m), top_orders_(std::move(top_orders)), coeffs_(std::move(coeffs)) {
  if (m_ < 1) throw Error(Errc::invalid_argument, "component count must be positive");
  if (static_cast<int>(top_orders_.size()) != m_)
    throw Error(Errc::invalid_argument, "top_orders size does not match component count");
  for (int nm : top_orders_)
    if (nm < 1) throw Error(Errc::invalid_argument, "every top order must be >= 1");

  n_max_ = *std::max_element(top_orders_.begin(), top_orders_.end());
  nc_ = std::accumulate(top_orders_.begin(), top_orders_.end(), 0);

  if (static_cast<int>(coeffs_.size()) != n_max_ + 1)
    throw Error(Errc::invalid_argument, "expected coefficient matrices h_0..h_N");
  for (const Matrix& c : coeffs_)
    if (c.rows() != m_ || c.cols() != m_)
      throw Error(Errc::invalid_argument, "coefficient matrix is not M x M");

  for (int n = 0; n <= n_max_; ++n) {
    const Matrix& c = coeffs_[n];
    const double dev = max_abs(c - c.adjoint());
    if (dev > kHermiticityTol * std::max(max_abs(c), 1e-300)) {
      std::ostringstream os;
      os << "h_" << n << " deviates from hermiticity by " << dev;
      throw Error(Errc::non_hermitian_coefficient, os.str());
    }
    if (n == 0) continue;
    for (int r = 0; r < m_; ++r) {
      for (int col = 0; col < m_; ++col) {
        if ((top_orders_[r] < n || top_orders_[col] < n) && c(r, col) != Complex(0.0, 0.0)) {
          std::ostringstream os;
          os << "h_" << n << "(" << r << "," << col
             << ") must be exactly zero (component top order below " << n << ")";
          throw Error(Errc::block_structure_violation, os.str());
        }
      }
    }
  }

  // Top-order diagonal blocks must be nondegenerate; they fix the asymptotic
  // band structure and the sign structure of the current matrix.
  std::vector<int> classes = top_orders_;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (int k : classes) {
    std::vector<int> members;
    for (int c = 0; c < m_; ++c)
      if (top_orders_[c] == k) members.push_back(c);
    Matrix block(members.size(), members.size());
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = 0; j < members.size(); ++j) block(i, j) = coeffs_[k](members[i], members[j]);
    Eigen::JacobiSVD<Matrix> svd(block);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smin > kTopBlockSvTol * smax)) {
      std::ostringstream os;
      os << "top-order block for order class " << k << " is degenerate (sv ratio "
         << (smax > 0 ? smin / smax : 0.0) << ")";
      throw Error(Errc::degenerate_top_order_block, os.str());
    }
  }

  canonical_.resize(m_);
  std::iota(canonical_.begin(), canonical_.end(), 0);
  std::stable_sort(canonical_.begin(), canonical_.end(),
                   [this](int a, int b) { return top_orders_[a] < top_orders_[b]; });
}

const Matrix& PolyMatrixHamiltonian::coeff(int n) const {
  if (n < 0 || n > n_max_) throw Error(Errc::invalid_argument, "coefficient order out of range");
  return coeffs_[n];
}

Matrix PolyMatrixHamiltonian::evaluate(Complex p) const {
  Matrix out = coeffs_[n_max_];
  for (int n = n_max_ - 1; n >= 0; --n) out = out * p + coeffs_[n];
  return out;
}

RealMatrix bulk_bands(const PolyMatrixHamiltonian& h, const std::vector<double>& p_values) {
  RealMatrix bands(p_values.size(), h.components());
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  for (size_t i = 0; i < p_values.size(); ++i) {
    solver.compute(h.evaluate(Complex(p_values[i], 0.0)), Eigen::EigenvaluesOnly);
    bands.row(i) = solver.eigenvalues().transpose();
  }
  return bands;
}

GapScan gap_window(const PolyMatrixHamiltonian& h, std::pair<double, double> p_range,
                   int n_samples) {
  const double span = p_range.second - p_range.first;
  if (!(span > 0.0) || n_samples < 2)
    throw Error(Errc::empty_range, "momentum grid is degenerate");
  if (n_samples < 101)
    throw Error(Errc::invalid_argument, "gap_window needs at least 101 samples");
  if (std::abs(p_range.first + p_range.second) > 1e-12 * span)
    throw Error(Errc::invalid_argument, "momentum range must be symmetric about zero");

  std::vector<double> grid(n_samples);
  for (int i = 0; i < n_samples; ++i)
    grid[i] = p_range.first + span * static_cast<double>(i) / (n_samples - 1);
  const RealMatrix bands = bulk_bands(h, grid);

  GapScan scan;
  const int m = h.components();
  std::vector<std::pair<double, double>> ranges(m);
  for (int b = 0; b < m; ++b) {
    ranges[b] = {bands.col(b).minCoeff(), bands.col(b).maxCoeff()};
    for (int i = 1; i < n_samples; ++i)
      scan.resolution = std::max(scan.resolution, std::abs(bands(i, b) - bands(i - 1, b)));
  }
  scan.envelope = std::max(std::abs(bands.minCoeff()), std::abs(bands.maxCoeff()));

  std::sort(ranges.begin(), ranges.end());
  double cursor = -scan.envelope;
  for (const auto& [lo, hi] : ranges) {
    if (lo > cursor) scan.intervals.emplace_back(cursor, lo);
    cursor = std::max(cursor, hi);
  }
  if (cursor < scan.envelope) scan.intervals.emplace_back(cursor, scan.envelope);
  return scan;
}

}  // namespace bcs
