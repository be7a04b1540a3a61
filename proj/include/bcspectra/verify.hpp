#ifndef BCSPECTRA_VERIFY_HPP
#define BCSPECTRA_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>

#include "bcspectra/spectra.hpp"

namespace bcs::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Deterministic gaussian/hermitian/Hamiltonian generators used by the
// property suites. Hand-rolled Box-Muller so the stream is identical across
// standard libraries.
double gaussian(std::mt19937_64& rng);
Matrix random_hermitian(std::mt19937_64& rng, int dim);

// Random Hamiltonian with mixed top orders (components <= max_components,
// orders <= max_order), hermitian blocks, exact block-structure zeros, and
// nondegenerate top-order blocks.
PolyMatrixHamiltonian random_hamiltonian(std::mt19937_64& rng, int max_components = 4,
                                         int max_order = 3);

// Same sampling, but returns the raw pieces with one top-order diagonal block
// forced singular (bypasses construction checks; for the degeneracy theorem).
struct DegenerateFixture {
  std::vector<int> top_orders;
  std::vector<Matrix> coeffs;
};
DegenerateFixture random_degenerate_fixture(std::mt19937_64& rng, int max_components = 4,
                                            int max_order = 3);

// Property suites. Each runs a fixed number of randomized trials and reports
// pass/fail with a short diagnostic.
CheckResult hermiticity_suite(std::uint64_t seed);
// Injected-fixture variant: validates the given coefficient set instead of
// random ones; a non-hermitian fixture makes the suite fail.
CheckResult hermiticity_suite_with(const std::vector<int>& top_orders,
                                   const std::vector<Matrix>& coeffs);
CheckResult current_identity_suite(std::uint64_t seed);
CheckResult degeneracy_theorem_suite(std::uint64_t seed);
CheckResult sign_invariance_suite(std::uint64_t seed);
CheckResult nonredundancy_suite(std::uint64_t seed);
CheckResult classification_roundtrip_suite(std::uint64_t seed);
CheckResult kernel_current_suite(std::uint64_t seed);
CheckResult symmetric_only_segment_suite();
CheckResult box_spectrum_suite();
CheckResult model_oracle_suite();

std::vector<CheckResult> run_all(std::uint64_t seed);

}  // namespace bcs::verify

#endif
