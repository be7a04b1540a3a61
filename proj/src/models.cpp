#include "bcspectra/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bcs {

namespace {

constexpr double kPi = std::numbers::pi;

double require_positive(double value, const char* name) {
  if (!(value > 0.0)) throw Error(Errc::invalid_argument, std::string(name) + " must be positive");
  return value;
}

// Reduce an angle to (-pi, pi].
double wrap_angle(double nu) {
  double r = std::fmod(nu, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

}  // namespace

QuadraticModel::QuadraticModel(double h2_in, double l_in)
    : h2(require_positive(h2_in, "h2")), l(require_positive(l_in, "l")) {}

LinearTwoBandModel::LinearTwoBandModel(double vz_in, double dx_in)
    : vz(require_positive(vz_in, "vz")), dx(require_positive(dx_in, "dx")) {}

PotentialWellModel::PotentialWellModel(double h2_in, double v0_in, double x0_in)
    : h2(require_positive(h2_in, "h2")),
      v0(require_positive(v0_in, "v0")),
      x0(require_positive(x0_in, "x0")) {}

PolyMatrixHamiltonian quadratic_hamiltonian(double h2) {
  std::vector<Matrix> coeffs(3, Matrix::Zero(1, 1));
  coeffs[2](0, 0) = h2;
  return PolyMatrixHamiltonian(1, {2}, std::move(coeffs));
}

PolyMatrixHamiltonian linear_hamiltonian(double vz, double dx) {
  std::vector<Matrix> coeffs(2, Matrix::Zero(2, 2));
  coeffs[0](0, 1) = dx;
  coeffs[0](1, 0) = dx;
  coeffs[1](0, 0) = vz;
  coeffs[1](1, 1) = -vz;
  return PolyMatrixHamiltonian(2, {1, 1}, std::move(coeffs));
}

PolyMatrixHamiltonian quartic_hamiltonian(double h2, double h4) {
  std::vector<Matrix> coeffs(5, Matrix::Zero(1, 1));
  coeffs[2](0, 0) = h2;
  coeffs[4](0, 0) = h4;
  return PolyMatrixHamiltonian(1, {4}, std::move(coeffs));
}

std::optional<double> quadratic_bound_energy(const QuadraticModel& model, double L) {
  if (std::isinf(L) || !(L < 0.0)) return std::nullopt;
  return -model.h2 / (L * L);
}

double angle_to_length(double l, double nu) {
  require_positive(l, "l");
  const double reduced = wrap_angle(nu);
  if (std::abs(reduced) < 1e-12)
    throw Error(Errc::singular_angle, "nu = 0 corresponds to L = ±inf (derivative-free condition)");
  return l / std::tan(0.5 * reduced);
}

double length_to_angle(double l, double L) {
  require_positive(l, "l");
  if (std::isinf(L)) return 0.0;  // the excluded point of the (-pi, pi] branch
  if (L == 0.0) return kPi;       // hard wall
  return 2.0 * std::atan(l / L);  // L < 0 maps into (-pi, 0), L > 0 into (0, pi)
}

std::optional<std::pair<double, Complex>> linear_bound_state(const LinearTwoBandModel& model,
                                                             double nu) {
  const double reduced = wrap_angle(nu);
  if (!(reduced > -kPi && reduced < 0.0)) return std::nullopt;
  const double energy = model.dx * std::cos(reduced);
  const Complex momentum = Complex(0.0, -1.0) * (model.dx / model.vz) * std::sin(reduced);
  return std::make_pair(energy, momentum);
}

double wall_effective_length(double h2, double v_wall) {
  require_positive(h2, "h2");
  require_positive(v_wall, "v_wall");
  return std::sqrt(h2 / v_wall);
}

double well_effective_length(const PotentialWellModel& model) {
  const double k0 = std::sqrt(model.v0 / model.h2);
  const double u = k0 * model.x0;
  if (std::abs(std::cos(u)) <= 1e-12 * std::max(1.0, std::abs(std::sin(u))))
    return std::copysign(std::numeric_limits<double>::infinity(), std::tan(u));
  return std::tan(u) / k0;
}

std::vector<double> well_exact_spectrum(const PotentialWellModel& model, int max_states) {
  // Roots of tan(k0(e) x0) = -k0(e)/kappa(e) for e in (-v0, 0), with
  // k0(e) = sqrt((v0+e)/h2) and kappa(e) = sqrt(-e/h2). In the variable
  // u = k0(e) x0 the equation reads tan(u) = -u/sqrt(u_max^2 - u^2): one
  // root per tangent branch entirely past u = pi/2.
  const double u_max = std::sqrt(model.v0 / model.h2) * model.x0;
  auto energy_of = [&](double u) {
    return model.h2 * (u / model.x0) * (u / model.x0) - model.v0;
  };
  auto f = [&](double u) {
    return std::tan(u) + u / std::sqrt(std::max(u_max * u_max - u * u, 1e-300));
  };

  std::vector<double> energies;
  for (int n = 0; static_cast<int>(energies.size()) < max_states; ++n) {
    const double pole = (n + 0.5) * kPi;
    if (pole >= u_max) break;
    double lo = pole + 1e-12 * std::max(1.0, pole);
    double hi = std::min((n + 1.5) * kPi - 1e-12, u_max - 1e-15 * std::max(1.0, u_max));
    if (hi <= lo) break;
    // f runs from -inf at the pole to +inf at the next pole or at u_max.
    double flo = f(lo);
    double fhi = f(hi);
    if (!(flo < 0.0) || !(fhi > 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      ((f(mid) < 0.0) ? lo : hi) = mid;
    }
    energies.push_back(energy_of(0.5 * (lo + hi)));
  }
  std::sort(energies.begin(), energies.end());
  return energies;
}

std::pair<double, double> low_energy_reduction(const LinearTwoBandModel& model) {
  return {model.vz * model.vz / (2.0 * model.dx), model.vz / (2.0 * model.dx)};
}

std::array<double, 4> n4_current_eigenvalues(double h2, double h4, double l) {
  require_positive(l, "l");
  const double j2 = h2 / l;
  const double j4 = h4 / (l * l * l);
  const double root = std::sqrt(4.0 * j4 * j4 + j2 * j2);
  std::array<double, 4> values = {0.5 * (root + j2), 0.5 * (root - j2), 0.5 * (-root + j2),
                                  0.5 * (-root - j2)};
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

}  // namespace bcs
