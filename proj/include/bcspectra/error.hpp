#ifndef BCSPECTRA_ERROR_HPP
#define BCSPECTRA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bcs {

// Domain error codes. Each maps to one failure mode of the library contracts;
// the CLI translates bcs::Error into exit code 1 and ConfigError into 2.
enum class Errc {
  non_hermitian_coefficient,
  degenerate_top_order_block,
  block_structure_violation,
  empty_range,
  degenerate_current_matrix,
  layout_mismatch,
  sign_structure_changed,
  unequal_mover_counts,
  equal_mover_counts,
  non_unitary,
  wrong_dimension,
  singular_angle,
  degenerate_root_cluster,
  root_count_mismatch,
  energy_in_band,
  unbalanced_roots,
  window_touches_band,
  negative_coordinate,
  invalid_argument,
  internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

// Configuration / file-format problems (bad JSON, missing files, malformed CLI
// input). Kept separate from Error so callers can distinguish user-input
// problems from domain failures.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bcs

#endif
