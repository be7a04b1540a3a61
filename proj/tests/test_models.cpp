#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bcspectra/models.hpp"
#include "bcspectra/spectra.hpp"
#include "bcspectra/verify.hpp"

using namespace bcs;
using std::numbers::pi;

TEST_CASE("quadratic bound energy: -h2/L^2 for L<0, nothing otherwise") {
  const QuadraticModel model(1.0);
  CHECK(*quadratic_bound_energy(model, -1.0) == doctest::Approx(-1.0));
  CHECK(!quadratic_bound_energy(model, 2.0).has_value());
  CHECK(!quadratic_bound_energy(model, 0.0).has_value());
  CHECK(!quadratic_bound_energy(model, std::numeric_limits<double>::infinity()).has_value());
  CHECK(!quadratic_bound_energy(model, -std::numeric_limits<double>::infinity()).has_value());

  const QuadraticModel steep(3.0);
  CHECK(*quadratic_bound_energy(steep, -0.5) == doctest::Approx(-12.0));
}

TEST_CASE("angle/length map: cot identity, branch, singular angle") {
  CHECK(angle_to_length(1.0, -pi / 2) == doctest::Approx(-1.0));
  CHECK(angle_to_length(1.0, pi) == doctest::Approx(0.0));
  // Inverse of L = -1 at l = 2: numerically inverted cot relation.
  CHECK(length_to_angle(2.0, -1.0) == doctest::Approx(2.0 * std::atan(-2.0)).epsilon(1e-12));
  CHECK(length_to_angle(2.0, -1.0) == doctest::Approx(-2.21429744).epsilon(1e-7));
  CHECK_THROWS_AS(angle_to_length(1.0, 0.0), Error);
  CHECK_THROWS_AS(angle_to_length(1.0, 2.0 * pi), Error);
  CHECK(length_to_angle(1.0, std::numeric_limits<double>::infinity()) == 0.0);
  // Branch consistency: L < 0 iff nu in (-pi, 0).
  for (double L : {-5.0, -0.3, 0.4, 7.0}) {
    const double nu = length_to_angle(1.0, L);
    CHECK(((L < 0) == (nu < 0)));
    CHECK(angle_to_length(1.0, nu) == doctest::Approx(L).epsilon(1e-12));
  }
}

TEST_CASE("linear bound state: d cos(nu) with momentum -i d sin(nu)/v") {
  const LinearTwoBandModel model(1.0, 1.0);
  const auto at_quarter = linear_bound_state(model, -pi / 2);
  REQUIRE(at_quarter.has_value());
  CHECK(at_quarter->first == doctest::Approx(0.0));
  CHECK(std::abs(at_quarter->second - Complex(0.0, 1.0)) < 1e-14);

  const auto at_sixth = linear_bound_state(model, -pi / 6);
  REQUIRE(at_sixth.has_value());
  CHECK(at_sixth->first == doctest::Approx(std::cos(pi / 6)));
  CHECK(std::abs(at_sixth->second - Complex(0.0, 0.5)) < 1e-14);

  CHECK(!linear_bound_state(model, pi / 3).has_value());
  CHECK(!linear_bound_state(model, 0.0).has_value());
}

TEST_CASE("wall realization: L = sqrt(h2 / V), hard wall in the tall limit") {
  CHECK(wall_effective_length(1.0, 100.0) == doctest::Approx(0.1));
  CHECK(wall_effective_length(1.0, 1e8) == doctest::Approx(1e-4));
  CHECK(wall_effective_length(4.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("well realization: effective length and resonant sentinel") {
  CHECK(std::isinf(well_effective_length(PotentialWellModel(1.0, 1.0, pi / 2))));
  CHECK(well_effective_length(PotentialWellModel(1.0, 1.0, pi / 2 + 0.1)) ==
        doctest::Approx(std::tan(pi / 2 + 0.1)).epsilon(1e-12));
  CHECK(well_effective_length(PotentialWellModel(1.0, 4.0, 0.1)) ==
        doctest::Approx(std::tan(0.2) / 2.0).epsilon(1e-12));
}

TEST_CASE("well exact spectrum: state counting and the defining equation") {
  CHECK(well_exact_spectrum(PotentialWellModel(1.0, 1.0, 1.0)).empty());

  const auto one = well_exact_spectrum(PotentialWellModel(1.0, 1.0, 2.0));
  REQUIRE(one.size() == 1);
  CHECK(one[0] > -1.0);
  CHECK(one[0] < 0.0);

  const PotentialWellModel deep(1.0, 100.0, 1.0);
  const auto three = well_exact_spectrum(deep);
  REQUIRE(three.size() == 3);
  // Each root satisfies tan(k0 x0) = -k0/kappa.
  for (double e : three) {
    const double k0 = std::sqrt((deep.v0 + e) / deep.h2);
    const double kappa = std::sqrt(-e / deep.h2);
    CHECK(std::tan(k0 * deep.x0) == doctest::Approx(-k0 / kappa).epsilon(1e-9));
  }
  CHECK(std::is_sorted(three.begin(), three.end()));
}

TEST_CASE("low-energy reduction constants") {
  const auto [h2a, l2a] = low_energy_reduction(LinearTwoBandModel(1.0, 1.0));
  CHECK(h2a == doctest::Approx(0.5));
  CHECK(l2a == doctest::Approx(0.5));
  const auto [h2b, l2b] = low_energy_reduction(LinearTwoBandModel(2.0, 1.0));
  CHECK(h2b == doctest::Approx(2.0));
  CHECK(l2b == doctest::Approx(1.0));
  const auto [h2c, l2c] = low_energy_reduction(LinearTwoBandModel(1.0, 0.5));
  CHECK(h2c == doctest::Approx(1.0));
  CHECK(l2c == doctest::Approx(1.0));
}

TEST_CASE("quartic current eigenvalues: golden-ratio case and sign pattern") {
  const auto golden = n4_current_eigenvalues(1.0, 1.0, 1.0);
  CHECK(golden[0] == doctest::Approx(1.6180339887498949).epsilon(1e-12));
  CHECK(golden[1] == doctest::Approx(0.6180339887498949).epsilon(1e-12));
  CHECK(golden[2] == doctest::Approx(-0.6180339887498949).epsilon(1e-12));
  CHECK(golden[3] == doctest::Approx(-1.6180339887498949).epsilon(1e-12));

  const auto pure = n4_current_eigenvalues(0.0, 1.0, 1.0);
  CHECK(pure[0] == doctest::Approx(1.0));
  CHECK(pure[1] == doctest::Approx(1.0));
  CHECK(pure[2] == doctest::Approx(-1.0));
  CHECK(pure[3] == doctest::Approx(-1.0));

  const auto scaled = n4_current_eigenvalues(1.0, 1.0, 10.0);
  CHECK(scaled[0] > 0);
  CHECK(scaled[1] > 0);
  CHECK(scaled[2] < 0);
  CHECK(scaled[3] < 0);
}

TEST_CASE("quartic closed form matches the numerical diagonalization") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 25; ++trial) {
    const double h2 = 3.0 * verify::gaussian(rng);
    double h4 = 0.0;
    while (std::abs(h4) < 0.2) h4 = 2.0 * verify::gaussian(rng);
    const double l = std::exp(0.8 * verify::gaussian(rng));
    const auto closed = n4_current_eigenvalues(h2, h4, l);
    const auto diag = diagonalize_current(quartic_hamiltonian(h2, h4), l);
    double scale = 0.0;
    for (double v : closed) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(closed[i] - diag.eigenvalues()(i)) < 1e-10 * scale);
  }
}

TEST_CASE("oracle agreement: half-line solver vs both closed-form models over nu") {
  const LinearTwoBandModel lin(1.0, 1.0);
  const QuadraticModel quad(1.0, 1.0);
  const auto lin_diag = diagonalize_current(linear_hamiltonian(lin.vz, lin.dx), 1.0);
  const auto quad_diag = diagonalize_current(quadratic_hamiltonian(quad.h2), quad.l);

  for (int k = 0; k < 64; ++k) {
    const double nu = -pi + pi * (k + 0.5) / 64.0;  // 64 angles in (-pi, 0)
    const auto lin_states =
        solve_half_line(u1_bc_from_angle(lin_diag, nu), {-1.0 + 1e-6, 1.0 - 1e-6}, 96);
    REQUIRE(lin_states.size() == 1);
    CHECK(std::abs(lin_states[0].energy - std::cos(nu)) < 1e-8);

    const double expected = *quadratic_bound_energy(quad, angle_to_length(quad.l, nu));
    const auto quad_states = solve_half_line(u1_bc_from_angle(quad_diag, nu),
                                             {1.5 * expected, 0.5 * expected}, 96);
    REQUIRE(quad_states.size() == 1);
    CHECK(std::abs(quad_states[0].energy - expected) < 1e-8 * std::abs(expected));
  }
}

TEST_CASE("reduction asymptotics: |Ec1 - dx - Ec2(L2)| <= C dx nu^4 with C < 1") {
  const LinearTwoBandModel model(1.0, 1.0);
  const auto [h2_eff, l2] = low_energy_reduction(model);
  const auto diag = diagonalize_current(linear_hamiltonian(model.vz, model.dx), 1.0);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double nu = -0.02 - 0.18 * k / 9.0;
    const auto states =
        solve_half_line(u1_bc_from_angle(diag, nu), {0.95, 1.0 - 1e-7}, 96);
    REQUIRE(states.size() == 1);
    const double L2 = l2 / std::tan(0.5 * nu);
    const double reduced = model.dx - h2_eff / (L2 * L2);
    worst = std::max(worst,
                     std::abs(states[0].energy - reduced) / (model.dx * std::pow(nu, 4.0)));
  }
  CHECK(worst < 1.0);
}

TEST_CASE("well realization matches the quadratic boundary condition near emergence") {
  double previous = std::numeric_limits<double>::infinity();
  for (double delta : {0.05, 0.04, 0.03, 0.02, 0.01}) {
    const PotentialWellModel model(1.0, 1.0, pi / 2 + delta);
    const auto exact = well_exact_spectrum(model);
    REQUIRE(!exact.empty());
    const double shallow = exact.back();
    const double L0 = well_effective_length(model);
    const double predicted = -model.h2 / (L0 * L0);
    const double rel_error = std::abs(predicted - shallow) / std::abs(shallow);
    CHECK(rel_error <= 5.0 * delta);
    CHECK(rel_error < previous);  // agreement improves toward emergence
    previous = rel_error;
  }
}

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(QuadraticModel(-1.0), Error);
  CHECK_THROWS_AS(LinearTwoBandModel(0.0, 1.0), Error);
  CHECK_THROWS_AS(PotentialWellModel(1.0, -2.0, 1.0), Error);
}
