#ifndef BCSPECTRA_IO_HPP
#define BCSPECTRA_IO_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "bcspectra/boundary.hpp"

namespace bcs::io {

using json = nlohmann::json;

// 17 significant digits; round-trips through text exactly.
std::string format_double(double value);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// Model files: {"m": M, "top_orders": [...], "coeffs": {"n": rows of [re,im]}}.
// Omitted orders default to zero matrices.
json model_to_json(const PolyMatrixHamiltonian& h);
PolyMatrixHamiltonian model_from_json(const json& j);
PolyMatrixHamiltonian load_model(const std::string& path);
void save_model(const PolyMatrixHamiltonian& h, const std::string& path);

// Boundary-condition files, one of:
//   {"type": "unitary", "u": [[...]]}
//   {"type": "u1_angle", "nu": x}
//   {"type": "raw", "c_plus": [[...]], "c_minus": [[...]]}
struct BcSpec {
  enum class Kind { unitary, u1_angle, raw };
  Kind kind = Kind::unitary;
  Matrix u;
  double nu = 0.0;
  Matrix c_plus;
  Matrix c_minus;
};

BcSpec bc_from_json(const json& j);
BcSpec load_bc(const std::string& path);

// Resolves a parsed spec against a diagonalization; raw relations are
// classified on load and must be admissible.
BoundaryCondition resolve_bc(const BcSpec& spec, const CurrentDiagonalization& diag);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Deterministic CSV: header row, %.17g numbers, empty cells for absences.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<std::optional<double>>& cells);
  void add_text_row(const std::vector<std::string>& cells);
  std::string str() const { return body_; }

private:
  std::size_t width_;
  std::string body_;
};

}  // namespace bcs::io

#endif
