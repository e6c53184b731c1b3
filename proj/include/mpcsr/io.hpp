#pragma once

// JSON encoding. A matrix is {"rows":n,"cols":m,"entries":[[...]]} with null
// for ε; an ensemble is {"generators":[matrix, ...]}. Integral values are
// written as integers.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpcsr/matrix.hpp"

namespace mpcsr::io {

using json = nlohmann::ordered_json;

/// Input that cannot be decoded into the expected shape.
class FormatError : public Error {
 public:
  using Error::Error;
};

inline json number(double v) {
  if (std::nearbyint(v) == v && std::fabs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

inline json scalar_to_json(Scalar s) { return s.is_eps() ? json(nullptr) : number(s.value()); }

inline json optional_to_json(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <class Vec>
json vector_to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

inline Scalar scalar_from_json(const json& j) {
  if (j.is_null()) return eps;
  if (!j.is_number()) throw FormatError("matrix entry must be a number or null, got " + j.dump());
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw FormatError("matrix entry must be finite");
  return v;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries")) throw FormatError("matrix must be an object with \"entries\"");
  const json& e = j.at("entries");
  if (!e.is_array() || e.empty() || !e.front().is_array() || e.front().empty())
    throw FormatError("\"entries\" must be a non-empty array of non-empty rows");
  const std::size_t rows = e.size(), cols = e.front().size();
  if (j.contains("rows") && j.at("rows") != rows) throw FormatError("\"rows\" disagrees with \"entries\"");
  if (j.contains("cols") && j.at("cols") != cols) throw FormatError("\"cols\" disagrees with \"entries\"");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!e[r].is_array() || e[r].size() != cols) throw FormatError("row " + std::to_string(r + 1) + " has wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(e[r][c]);
  }
  return m;
}

inline std::vector<Matrix> ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.at("generators").is_array() || j.at("generators").empty())
    throw FormatError("ensemble must be an object with a non-empty \"generators\" array");
  std::vector<Matrix> gens;
  for (const auto& g : j.at("generators")) gens.push_back(matrix_from_json(g));
  for (const auto& g : gens)
    if (!g.is_square() || g.rows() != gens.front().rows())
      throw FormatError("generators must be square and of equal size");
  return gens;
}

inline json ensemble_to_json(const std::vector<Matrix>& gens) {
  json arr = json::array();
  for (const auto& g : gens) arr.push_back(matrix_to_json(g));
  return json{{"generators", std::move(arr)}};
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

inline std::vector<Matrix> load_ensemble(const std::string& path) { return ensemble_from_json(read_file(path)); }

}  // namespace mpcsr::io
