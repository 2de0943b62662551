#pragma once

#include "nk/types.hpp"

#include <nlohmann/json.hpp>

namespace nk {

/// Matrices serialize as arrays of rows.
template <int R, int C>
nlohmann::json matrix_to_json(const Eigen::Matrix<double, R, C>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <int R, int C>
Eigen::Matrix<double, R, C> matrix_from_json(const nlohmann::json& j) {
  Eigen::Matrix<double, R, C> m;
  if (!j.is_array() || j.size() != std::size_t(R))
    throw nlohmann::json::type_error::create(302, "expected " + std::to_string(R) + " rows", &j);
  for (int i = 0; i < R; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != std::size_t(C))
      throw nlohmann::json::type_error::create(302, "expected " + std::to_string(C) + " columns", &j);
    for (int c = 0; c < C; ++c) m(i, c) = row[c].get<double>();
  }
  return m;
}

}  // namespace nk
