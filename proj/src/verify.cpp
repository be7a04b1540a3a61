#include "bcspectra/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bcspectra/models.hpp"

namespace bcs::verify {

namespace {

using std::numbers::pi;

std::string format_failure(const std::string& what, double value, double bound) {
  std::ostringstream os;
  os << what << " (" << value << " vs bound " << bound << ")";
  return os.str();
}

}  // namespace

double gaussian(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

Matrix random_hermitian(std::mt19937_64& rng, int dim) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gaussian(rng), gaussian(rng));
  return 0.5 * (g + g.adjoint());
}

namespace {

// Hermitian coefficient list respecting the block structure for the given
// orders; the top-order diagonal blocks are not specially conditioned.
std::vector<Matrix> random_coeffs(std::mt19937_64& rng, const std::vector<int>& orders) {
  const int m = static_cast<int>(orders.size());
  const int n_max = *std::max_element(orders.begin(), orders.end());
  std::vector<Matrix> coeffs(n_max + 1, Matrix::Zero(m, m));
  for (int n = 0; n <= n_max; ++n) {
    Matrix full = random_hermitian(rng, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        if (n == 0 || (orders[r] >= n && orders[c] >= n)) coeffs[n](r, c) = full(r, c);
  }
  return coeffs;
}

std::vector<int> random_orders(std::mt19937_64& rng, int max_components, int max_order) {
  const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_components));
  std::vector<int> orders(m);
  for (int& o : orders) o = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_order));
  return orders;
}

// Generic fixtures need comfortably nondegenerate top blocks: blocks barely
// past the construction threshold lose the current-matrix eigenvalue margin
// once extreme length scales stretch the block magnitudes apart.
bool tops_well_conditioned(const std::vector<int>& orders, const std::vector<Matrix>& coeffs) {
  std::vector<int> classes = orders;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (int k : classes) {
    std::vector<int> members;
    for (size_t c = 0; c < orders.size(); ++c)
      if (orders[c] == k) members.push_back(static_cast<int>(c));
    Matrix block(members.size(), members.size());
    for (size_t r = 0; r < members.size(); ++r)
      for (size_t c = 0; c < members.size(); ++c) block(r, c) = coeffs[k](members[r], members[c]);
    Eigen::JacobiSVD<Matrix> svd(block);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-2 * sv(0))) return false;
  }
  return true;
}

}  // namespace

PolyMatrixHamiltonian random_hamiltonian(std::mt19937_64& rng, int max_components, int max_order) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<int> orders = random_orders(rng, max_components, max_order);
    std::vector<Matrix> coeffs = random_coeffs(rng, orders);
    if (!tops_well_conditioned(orders, coeffs)) continue;
    try {
      return PolyMatrixHamiltonian(static_cast<int>(orders.size()), orders, coeffs);
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(Errc::internal, "failed to sample a valid random Hamiltonian");
}

DegenerateFixture random_degenerate_fixture(std::mt19937_64& rng, int max_components,
                                            int max_order) {
  DegenerateFixture fixture;
  fixture.top_orders = random_orders(rng, max_components, max_order);
  fixture.coeffs = random_coeffs(rng, fixture.top_orders);

  // Force one top-order diagonal block singular: zero for scalar blocks, a
  // rank-one projector otherwise.
  std::vector<int> classes = fixture.top_orders;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  const int k = classes[rng() % classes.size()];
  std::vector<int> members;
  for (size_t c = 0; c < fixture.top_orders.size(); ++c)
    if (fixture.top_orders[c] == k) members.push_back(static_cast<int>(c));
  if (members.size() == 1) {
    fixture.coeffs[k](members[0], members[0]) = 0.0;
  } else {
    Vector v(members.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gaussian(rng), gaussian(rng));
    const Matrix block = v * v.adjoint();
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = 0; j < members.size(); ++j)
        fixture.coeffs[k](members[i], members[j]) = block(i, j);
  }
  return fixture;
}

CheckResult hermiticity_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const PolyMatrixHamiltonian h = random_hamiltonian(rng);
    const double p = 3.0 * gaussian(rng);
    const Matrix at_p = h.evaluate(Complex(p, 0.0));
    const double dev = (at_p - at_p.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(at_p.cwiseAbs().maxCoeff(), 1.0);
    if (dev > 1e-12 * scale)
      return {"hermiticity", false, format_failure("H(p) not hermitian at real p", dev, 1e-12 * scale)};
  }
  // Rejection path: an explicitly non-hermitian coefficient must be refused.
  std::vector<Matrix> bad(3, Matrix::Zero(1, 1));
  bad[2](0, 0) = Complex(0.0, 1.0);
  try {
    PolyMatrixHamiltonian h(1, {2}, bad);
    return {"hermiticity", false, "non-hermitian coefficient was accepted"};
  } catch (const Error& err) {
    if (err.code() != Errc::non_hermitian_coefficient)
      return {"hermiticity", false, std::string("unexpected error: ") + err.what()};
  }
  return {"hermiticity", true, "50 random Hamiltonians hermitian at real p; rejection path works"};
}

CheckResult hermiticity_suite_with(const std::vector<int>& top_orders,
                                   const std::vector<Matrix>& coeffs) {
  try {
    PolyMatrixHamiltonian h(static_cast<int>(top_orders.size()), top_orders, coeffs);
  } catch (const Error& err) {
    return {"hermiticity", false, std::string("fixture rejected: ") + err.what()};
  }
  return {"hermiticity", true, "fixture accepted"};
}

CheckResult current_identity_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const PolyMatrixHamiltonian h = random_hamiltonian(rng);
    const double l = std::exp(gaussian(rng));
    const CurrentDiagonalization diag = diagonalize_current(h, l);
    const int n = diag.layout().size();

    BoundaryTraceVector trace;
    trace.l = l;
    trace.values.resize(n);
    for (int i = 0; i < n; ++i) trace.values(i) = Complex(gaussian(rng), gaussian(rng));

    const Complex quad = current_form(diag.layout(), diag.j_matrix(), trace, trace);
    const double split = diag.movers_plus(trace.values).squaredNorm() -
                         diag.movers_minus(trace.values).squaredNorm();
    const double bound = 1e-10 * trace.values.squaredNorm() *
                         std::max(diag.j_matrix().cwiseAbs().maxCoeff(), 1e-300);
    if (std::abs(quad.real() - split) > bound || std::abs(quad.imag()) > bound)
      return {"current_identity", false,
              format_failure("diagonalized current mismatch", std::abs(quad.real() - split), bound)};

    // Plane-wave check: the current equals chi^dag dH/dp chi at real p.
    const double p = gaussian(rng);
    Vector chi(h.components());
    for (int i = 0; i < h.components(); ++i) chi(i) = Complex(gaussian(rng), gaussian(rng));
    const BoundaryTraceVector plane = plane_wave_trace(diag.layout(), Complex(p, 0.0), chi, l);
    Matrix dh = Matrix::Zero(h.components(), h.components());
    for (int n_ord = 1; n_ord <= h.top_order(); ++n_ord)
      dh += static_cast<double>(n_ord) * h.coeff(n_ord) * std::pow(p, n_ord - 1);
    const double expected = std::real((chi.adjoint() * dh * chi)(0, 0));
    const Complex got = current_form(diag.layout(), diag.j_matrix(), plane, plane);
    const double scale = std::max({std::abs(expected), chi.squaredNorm(), 1.0}) *
                         std::max(dh.cwiseAbs().maxCoeff(), 1.0);
    if (std::abs(got.real() - expected) > 1e-9 * scale)
      return {"current_identity", false,
              format_failure("plane-wave current vs dH/dp", std::abs(got.real() - expected),
                             1e-9 * scale)};
  }
  return {"current_identity", true, "normalized split and dH/dp forms agree on 50 random models"};
}

CheckResult degeneracy_theorem_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    const PolyMatrixHamiltonian h = random_hamiltonian(rng);
    const double l = std::exp(gaussian(rng));
    const auto [layout, j] = build_current_matrix(h, l);
    Eigen::SelfAdjointEigenSolver<Matrix> es(j, Eigen::EigenvaluesOnly);
    const double min_mag = es.eigenvalues().cwiseAbs().minCoeff();
    const double max_mag = es.eigenvalues().cwiseAbs().maxCoeff();
    if (!(min_mag > 1e-10 * max_mag))
      return {"degeneracy_theorem", false,
              format_failure("nondegenerate top blocks produced a degenerate current matrix",
                             min_mag / max_mag, 1e-10)};
  }
  for (int trial = 0; trial < 50; ++trial) {
    const DegenerateFixture fixture = random_degenerate_fixture(rng);
    const TraceLayout layout = TraceLayout::for_orders(fixture.top_orders);
    const Matrix j =
        detail::assemble_current_matrix(fixture.coeffs, fixture.top_orders, layout, 1.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(j, Eigen::EigenvaluesOnly);
    const double min_mag = es.eigenvalues().cwiseAbs().minCoeff();
    const double max_mag = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    if (!(min_mag <= 1e-10 * max_mag))
      return {"degeneracy_theorem", false,
              format_failure("singular top block did not make the current matrix singular",
                             min_mag / max_mag, 1e-10)};
  }
  return {"degeneracy_theorem", true,
          "200 nondegenerate + 50 forced-singular fixtures behave as the theorem demands"};
}

CheckResult sign_invariance_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const PolyMatrixHamiltonian h = random_hamiltonian(rng);
    try {
      sign_structure_invariance(h, {0.01, 1.0, 100.0});
    } catch (const Error& err) {
      return {"sign_invariance", false, err.what()};
    }
  }
  return {"sign_invariance", true, "mover split stable over l in {0.01, 1, 100} for 50 models"};
}

CheckResult nonredundancy_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 30; ++trial) {
    const PolyMatrixHamiltonian h = random_hamiltonian(rng);
    const CurrentDiagonalization diag = diagonalize_current(h, 1.0);
    if (!diag.balanced()) continue;
    ++checked;
    const int half = diag.n_plus();
    const Matrix u1 = haar_unitary(half, rng());
    const Matrix u2 = haar_unitary(half, rng());
    if ((u1 - u2).cwiseAbs().maxCoeff() < 1e-6) continue;
    const double dist = row_space_distance(raw_relation_matrix(standard_bc(diag, u1)),
                                           raw_relation_matrix(standard_bc(diag, u2)));
    if (!(dist > 1e-8))
      return {"nonredundancy", false,
              format_failure("distinct unitaries produced the same relation space", dist, 1e-8)};
  }
  return {"nonredundancy", true, "distinct unitaries give distinct relation spaces (30 models)"};
}

CheckResult classification_roundtrip_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int checked = 0;
  for (int trial = 0; trial < 80 && checked < 30; ++trial) {
    const PolyMatrixHamiltonian h = random_hamiltonian(rng);
    const CurrentDiagonalization diag = diagonalize_current(h, 1.0);
    if (!diag.balanced()) continue;
    ++checked;
    const Matrix u = haar_unitary(diag.n_plus(), rng());
    const Matrix raw = raw_relation_matrix(standard_bc(diag, u));
    const auto [c_plus, c_minus] = mover_relations_from_raw(diag, raw);
    const BoundaryClassification verdict = classify_relations(diag, c_plus, c_minus);
    const Admissible* adm = std::get_if<Admissible>(&verdict);
    if (adm == nullptr)
      return {"classification_roundtrip", false, "standard condition not classified admissible"};
    const double dev = (adm->u - u).cwiseAbs().maxCoeff();
    if (dev > 1e-10)
      return {"classification_roundtrip", false,
              format_failure("recovered unitary drifted", dev, 1e-10)};
  }
  return {"classification_roundtrip", true, "U recovered exactly on 30 random models"};
}

CheckResult kernel_current_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int checked = 0;
  for (int trial = 0; trial < 80 && checked < 30; ++trial) {
    const PolyMatrixHamiltonian h = random_hamiltonian(rng);
    const CurrentDiagonalization diag = diagonalize_current(h, 1.0);
    if (!diag.balanced()) continue;
    ++checked;
    const Matrix u = haar_unitary(diag.n_plus(), rng());
    const Matrix raw = raw_relation_matrix(standard_bc(diag, u));
    // Kernel vectors of the relation rows must carry zero current.
    Eigen::JacobiSVD<Matrix> svd(raw, Eigen::ComputeFullV);
    const int n = diag.layout().size();
    for (int k = raw.rows(); k < n; ++k) {
      BoundaryTraceVector trace;
      trace.l = diag.l();
      trace.values = svd.matrixV().col(k);
      const Complex j = current_form(diag.layout(), diag.j_matrix(), trace, trace);
      const double bound = 1e-10 * std::max(diag.j_matrix().cwiseAbs().maxCoeff(), 1.0);
      if (std::abs(j) > bound)
        return {"kernel_current", false,
                format_failure("boundary-condition kernel carries current", std::abs(j), bound)};
    }
  }
  return {"kernel_current", true, "relation kernels carry zero current (30 models)"};
}

CheckResult symmetric_only_segment_suite() {
  // Unbalanced three-mode model (two right-movers, one left-mover). With an
  // energy matrix coupling the modes, the stacked relations keep full rank at
  // every energy: no segment spectrum exists at all.
  std::vector<Matrix> coeffs(2, Matrix::Zero(3, 3));
  coeffs[0] << 0.0, 0.4, 0.3,  //
      0.4, 0.0, 0.2,           //
      0.3, 0.2, 0.0;
  coeffs[1](0, 0) = 1.0;
  coeffs[1](1, 1) = 1.0;
  coeffs[1](2, 2) = -1.0;
  const PolyMatrixHamiltonian coupled(3, {1, 1, 1}, coeffs);
  const CurrentDiagonalization diag = diagonalize_current(coupled, 1.0);
  if (diag.n_plus() != 2 || diag.n_minus() != 1)
    return {"symmetric_only_segment", false, "unexpected mover split"};

  Matrix u(1, 1);
  u(0, 0) = 1.0;
  const Matrix relations = symmetric_only_bc(diag, u);
  const auto [c_plus, c_minus] = mover_relations_from_raw(diag, relations);
  const BoundaryClassification verdict = classify_relations(diag, c_plus, c_minus);
  if (!std::holds_alternative<SymmetricOnly>(verdict))
    return {"symmetric_only_segment", false, "canonical relations not classified symmetric-only"};

  const auto states = solve_segment_raw(coupled, diag, relations, relations, 5.0,
                                        {-10.0, 10.0}, 128);
  if (!states.empty())
    return {"symmetric_only_segment", false,
            "segment with symmetric-only relations produced a spectrum"};

  // Decoupled limit: here the nullified mover separates, and the segment does
  // carry states, but all of them live in the reduced sector with that mover
  // identically zero. An incomplete eigenbasis is the defining pathology.
  std::vector<Matrix> plain(2, Matrix::Zero(3, 3));
  plain[1] = coeffs[1];
  const PolyMatrixHamiltonian decoupled(3, {1, 1, 1}, plain);
  const CurrentDiagonalization diag0 = diagonalize_current(decoupled, 1.0);
  const Matrix relations0 = symmetric_only_bc(diag0, u);
  const auto sector_states =
      solve_segment_raw(decoupled, diag0, relations0, relations0, 4.0, {-2.0, 2.0}, 128);
  if (sector_states.empty())
    return {"symmetric_only_segment", false, "decoupled fixture lost its reduced-sector states"};
  // The nullified mover is the last positive-eigenvalue column; in this
  // decoupled basis it is a single component.
  int killed = 0;
  const RealVector killed_mags = diag0.eigenvectors().col(diag0.n_plus() - 1).cwiseAbs();
  killed_mags.maxCoeff(&killed);
  for (const auto& state : sector_states) {
    std::vector<double> xs{0.0, 1.0, 2.5, 4.0};
    const Matrix psi = segment_wavefunction(state, xs);
    if (psi.row(killed).cwiseAbs().maxCoeff() > 1e-8)
      return {"symmetric_only_segment", false,
              "decoupled segment state leaked into the nullified mover"};
  }
  return {"symmetric_only_segment", true,
          "coupled fixture: empty spectrum; decoupled fixture: states confined to the "
          "reduced sector"};
}

CheckResult box_spectrum_suite() {
  const PolyMatrixHamiltonian h = quadratic_hamiltonian(1.0);
  const CurrentDiagonalization diag = diagonalize_current(h, 1.0);
  const BoundaryCondition wall_left = u1_bc_from_angle(diag, pi);
  const BoundaryCondition wall_right = u1_bc_from_angle(diag, pi);
  const auto states = solve_segment(h, wall_left, wall_right, pi, {0.5, 10.0}, 128);
  if (states.size() != 3)
    return {"box_spectrum", false, "expected 3 hard-wall box levels in (0.5, 10)"};
  for (int n = 0; n < 3; ++n) {
    const double expected = static_cast<double>((n + 1) * (n + 1));
    if (std::abs(states[n].energy - expected) > 1e-7)
      return {"box_spectrum", false,
              format_failure("box level off", states[n].energy, expected)};
  }
  return {"box_spectrum", true, "hard-wall box levels {1, 4, 9} reproduced"};
}

CheckResult model_oracle_suite() {
  // Linear model against its closed form at a few angles.
  const LinearTwoBandModel linear(1.0, 1.0);
  const PolyMatrixHamiltonian h1 = linear_hamiltonian(linear.vz, linear.dx);
  const CurrentDiagonalization diag1 = diagonalize_current(h1, 1.0);
  for (double nu : {-2.5, -1.5, -0.5}) {
    const auto expected = linear_bound_state(linear, nu);
    const auto states =
        solve_half_line(u1_bc_from_angle(diag1, nu), {-0.999, 0.999}, 128);
    if (states.size() != 1 || std::abs(states[0].energy - expected->first) > 1e-8)
      return {"model_oracles", false, "linear-model bound state off its closed form"};
  }
  for (double nu : {0.5, 2.0}) {
    const auto states =
        solve_half_line(u1_bc_from_angle(diag1, nu), {-0.999, 0.999}, 128);
    if (!states.empty())
      return {"model_oracles", false, "linear model produced a state outside (-pi, 0)"};
  }

  // Quadratic model against E = -h2/L^2.
  const QuadraticModel quad(1.0, 1.0);
  const PolyMatrixHamiltonian h2 = quadratic_hamiltonian(quad.h2);
  const CurrentDiagonalization diag2 = diagonalize_current(h2, quad.l);
  for (double L : {-0.5, -1.0, -4.0}) {
    const double expected = *quadratic_bound_energy(quad, L);
    const auto states = solve_half_line(u1_bc_from_angle(diag2, length_to_angle(quad.l, L)),
                                        {1.5 * expected, 0.5 * expected}, 96);
    if (states.size() != 1 || std::abs(states[0].energy - expected) > 1e-8 * std::abs(expected))
      return {"model_oracles", false, "quadratic-model bound state off -h2/L^2"};
  }
  return {"model_oracles", true, "half-line solver matches both closed-form models"};
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
  std::vector<CheckResult> results;
  results.push_back(hermiticity_suite(seed));
  results.push_back(current_identity_suite(seed + 1));
  results.push_back(degeneracy_theorem_suite(seed + 2));
  results.push_back(sign_invariance_suite(seed + 3));
  results.push_back(nonredundancy_suite(seed + 4));
  results.push_back(classification_roundtrip_suite(seed + 5));
  results.push_back(kernel_current_suite(seed + 6));
  results.push_back(symmetric_only_segment_suite());
  results.push_back(box_spectrum_suite());
  results.push_back(model_oracle_suite());
  return results;
}

}  // namespace bcs::verify
