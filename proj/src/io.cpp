#include "bcspectra/io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace bcs::io {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("complex numbers must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ConfigError("matrix rows must be nonempty arrays");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ConfigError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json model_to_json(const PolyMatrixHamiltonian& h) {
  json j;
  j["m"] = h.components();
  j["top_orders"] = h.top_orders();
  json coeffs = json::object();
  for (int n = 0; n <= h.top_order(); ++n) {
    if (h.coeff(n).cwiseAbs().maxCoeff() == 0.0) continue;  // omitted orders are zero
    coeffs[std::to_string(n)] = matrix_to_json(h.coeff(n));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

PolyMatrixHamiltonian model_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("model config must be a JSON object");
  if (!j.contains("m") || !j["m"].is_number_integer())
    throw ConfigError("model config: integer field 'm' is required");
  if (!j.contains("top_orders") || !j["top_orders"].is_array())
    throw ConfigError("model config: array field 'top_orders' is required");
  const int m = j["m"].get<int>();
  std::vector<int> orders;
  for (const auto& o : j["top_orders"]) {
    if (!o.is_number_integer()) throw ConfigError("model config: top_orders must be integers");
    orders.push_back(o.get<int>());
  }
  if (static_cast<int>(orders.size()) != m)
    throw ConfigError("model config: top_orders length must equal m");
  const int n_max = orders.empty() ? 0 : *std::max_element(orders.begin(), orders.end());

  std::vector<Matrix> coeffs(n_max + 1, Matrix::Zero(m, m));
  if (j.contains("coeffs")) {
    if (!j["coeffs"].is_object()) throw ConfigError("model config: 'coeffs' must map order -> matrix");
    for (const auto& [key, value] : j["coeffs"].items()) {
      int n = -1;
      try {
        n = std::stoi(key);
      } catch (...) {
        throw ConfigError("model config: coefficient keys must be integers, got '" + key + "'");
      }
      if (n < 0 || n > n_max)
        throw ConfigError("model config: coefficient order " + key + " out of range 0.." +
                          std::to_string(n_max));
      Matrix mat = matrix_from_json(value);
      if (mat.rows() != m || mat.cols() != m)
        throw ConfigError("model config: coefficient " + key + " is not m x m");
      coeffs[n] = std::move(mat);
    }
  }
  try {
    return PolyMatrixHamiltonian(m, std::move(orders), std::move(coeffs));
  } catch (const Error& err) {
    throw ConfigError(std::string("model config rejected: ") + err.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

PolyMatrixHamiltonian load_model(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& err) {
    throw ConfigError("model file " + path + ": " + err.what());
  }
  return model_from_json(j);
}

void save_model(const PolyMatrixHamiltonian& h, const std::string& path) {
  write_file(path, model_to_json(h).dump(2) + "\n");
}

BcSpec bc_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ConfigError("bc config must be an object with a string 'type'");
  const std::string type = j["type"].get<std::string>();
  BcSpec spec;
  if (type == "unitary") {
    spec.kind = BcSpec::Kind::unitary;
    if (!j.contains("u")) throw ConfigError("bc config: type 'unitary' needs field 'u'");
    spec.u = matrix_from_json(j["u"]);
  } else if (type == "u1_angle") {
    spec.kind = BcSpec::Kind::u1_angle;
    if (!j.contains("nu") || !j["nu"].is_number())
      throw ConfigError("bc config: type 'u1_angle' needs numeric field 'nu'");
    spec.nu = j["nu"].get<double>();
  } else if (type == "raw") {
    spec.kind = BcSpec::Kind::raw;
    if (!j.contains("c_plus") || !j.contains("c_minus"))
      throw ConfigError("bc config: type 'raw' needs fields 'c_plus' and 'c_minus'");
    spec.c_plus = matrix_from_json(j["c_plus"]);
    spec.c_minus = matrix_from_json(j["c_minus"]);
  } else {
    throw ConfigError("bc config: unknown type '" + type + "'");
  }
  return spec;
}

BcSpec load_bc(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& err) {
    throw ConfigError("bc file " + path + ": " + err.what());
  }
  return bc_from_json(j);
}

BoundaryCondition resolve_bc(const BcSpec& spec, const CurrentDiagonalization& diag) {
  switch (spec.kind) {
    case BcSpec::Kind::unitary:
      return standard_bc(diag, spec.u);
    case BcSpec::Kind::u1_angle:
      return u1_bc_from_angle(diag, spec.nu);
    case BcSpec::Kind::raw: {
      const BoundaryClassification verdict = classify_relations(diag, spec.c_plus, spec.c_minus);
      if (const Admissible* adm = std::get_if<Admissible>(&verdict))
        return standard_bc(diag, adm->u);
      if (std::holds_alternative<Insufficient>(verdict))
        throw Error(Errc::invalid_argument,
                    "raw relations have insufficient rank to nullify the current");
      if (std::holds_alternative<NotCurrentConserving>(verdict))
        throw Error(Errc::invalid_argument, "raw relations do not conserve the boundary current");
      throw Error(Errc::invalid_argument,
                  "raw relations are only symmetric; no admissible condition");
    }
  }
  throw Error(Errc::internal, "unreachable bc kind");
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : width_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) body_ += ',';
    body_ += columns[i];
  }
  body_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::optional<double>>& cells) {
  if (cells.size() != width_) throw Error(Errc::internal, "csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    if (cells[i]) body_ += format_double(*cells[i]);
  }
  body_ += '\n';
}

void CsvWriter::add_text_row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw Error(Errc::internal, "csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

}  // namespace bcs::io
