#pragma once

#include <fstream>

#include <json.hpp>

#include "acmg/catalog.hpp"

namespace acmg {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

template <typename S>
S scalar_from_json(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return ScalarTraits<S>::from_double(v.get<double>());
}

}  // namespace detail

/// Model file format (UTF-8 JSON):
///   { "name": string, "dimension": odd int m,
///     "structure_constants": [{"i": int, "j": int, "k": int, "value": num}, ...],
///     "phi": m*m row-major numbers, "zeta": m numbers,
///     "tolerance": optional number, "exact": optional bool }
/// Indices are 1-based; only i < j entries are required, skew completion is
/// automatic. Diagnostics carry the file path and the offending entry.
template <typename S>
CatalogEntry<S> custom_from_file(const std::string& path, double default_eps = 1e-9) {
  const nlohmann::json j = detail::load_json(path);
  if (!j.is_object()) throw ParseError(path + ": top level must be an object");

  const double eps = j.value("tolerance", default_eps);

  if (!j.contains("dimension")) throw ParseError(path + ": missing \"dimension\"");
  const int m = j.at("dimension").get<int>();
  if (m < 3 || m % 2 == 0)
    throw ParseError(path + ": \"dimension\" must be odd and >= 3, got " + std::to_string(m));

  CatalogEntry<S> entry;
  entry.model = LieAlgebraModel<S>(j.value("name", std::string("custom")), m);

  if (j.contains("structure_constants")) {
    const auto& cs = j.at("structure_constants");
    if (!cs.is_array()) throw ParseError(path + ": \"structure_constants\" must be an array");
    int pos = 0;
    for (const auto& rec : cs) {
      const std::string where = path + ": structure_constants[" + std::to_string(pos) + "]";
      if (!rec.is_object() || !rec.contains("i") || !rec.contains("j") || !rec.contains("k") ||
          !rec.contains("value"))
        throw ParseError(where + ": need fields i, j, k, value");
      const int i = rec.at("i").get<int>();
      const int jj = rec.at("j").get<int>();
      const int k = rec.at("k").get<int>();
      if (i < 1 || i > m || jj < 1 || jj > m || k < 1 || k > m)
        throw ParseError(where + ": index out of range 1.." + std::to_string(m));
      if (i == jj) throw ParseError(where + ": bracket [e_i, e_i] must not be specified");
      S v = detail::scalar_from_json<S>(rec.at("value"), where + ".value");
      entry.model.c(i - 1, jj - 1, k - 1) += v;
      entry.model.c(jj - 1, i - 1, k - 1) -= v;
      ++pos;
    }
  }
  try {
    entry.model.validate(eps);
  } catch (const ModelError& e) {
    throw ParseError(path + ": " + e.what());
  }

  if (!j.contains("phi")) throw ParseError(path + ": missing \"phi\"");
  const auto& pj = j.at("phi");
  if (!pj.is_array() || pj.size() != static_cast<std::size_t>(m * m))
    throw ParseError(path + ": \"phi\" must hold " + std::to_string(m * m) +
                     " numbers (row-major)");
  AcmStructure<S> acms;
  acms.phi = Tensor<S>(2, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      acms.phi(i, k) = detail::scalar_from_json<S>(
          pj.at(static_cast<std::size_t>(i * m + k)),
          path + ": phi[" + std::to_string(i * m + k) + "]");

  if (!j.contains("zeta")) throw ParseError(path + ": missing \"zeta\"");
  const auto& zj = j.at("zeta");
  if (!zj.is_array() || zj.size() != static_cast<std::size_t>(m))
    throw ParseError(path + ": \"zeta\" must hold " + std::to_string(m) + " numbers");
  acms.zeta = Tensor<S>(1, m);
  for (int i = 0; i < m; ++i)
    acms.zeta(i) = detail::scalar_from_json<S>(zj.at(static_cast<std::size_t>(i)),
                                               path + ": zeta[" + std::to_string(i) + "]");
  acms.eta = acms.zeta;
  acms.n = (m - 1) / 2;

  auto res = validate(acms);
  for (const auto& [name, v] : res.entries)
    if (v >= eps)
      throw ParseError(path + ": invalid almost contact metric structure: " + name +
                       " residual " + std::to_string(v));
  entry.acms = acms;
  return entry;
}

/// Reads a bare m x m row-major matrix (JSON array of numbers or of rows).
template <typename S>
Tensor<S> phi_matrix_from_file(const std::string& path, int m) {
  const nlohmann::json j = detail::load_json(path);
  Tensor<S> P(2, m);
  if (j.is_array() && j.size() == static_cast<std::size_t>(m) && j.at(0).is_array()) {
    for (int i = 0; i < m; ++i) {
      const auto& row = j.at(static_cast<std::size_t>(i));
      if (!row.is_array() || row.size() != static_cast<std::size_t>(m))
        throw ParseError(path + ": row " + std::to_string(i) + " must hold " +
                         std::to_string(m) + " numbers");
      for (int k = 0; k < m; ++k)
        P(i, k) = detail::scalar_from_json<S>(row.at(static_cast<std::size_t>(k)),
                                              path + ": [" + std::to_string(i) + "][" +
                                                  std::to_string(k) + "]");
    }
    return P;
  }
  if (j.is_array() && j.size() == static_cast<std::size_t>(m * m)) {
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        P(i, k) = detail::scalar_from_json<S>(j.at(static_cast<std::size_t>(i * m + k)),
                                              path + ": [" + std::to_string(i * m + k) + "]");
    return P;
  }
  throw ParseError(path + ": expected an " + std::to_string(m) + "x" + std::to_string(m) +
                   " matrix");
}

}  // namespace acmg
