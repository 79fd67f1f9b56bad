#pragma once

#include <json.hpp>
#include <string>

#include "sbim/bimodule.hpp"

namespace sbim {

using Json = nlohmann::ordered_json;

template <class K>
Json poly_to_json(const LaurentPoly<K>& f, int n) {
  Json j = Json::object();
  for (const auto& [key, val] : to_entries(f, n)) j[key] = val;
  return j;
}

template <class K>
LaurentPoly<K> poly_from_json(const FieldSpec& field, const Json& j) {
  std::vector<std::pair<std::string, std::string>> entries;
  for (auto it = j.begin(); it != j.end(); ++it) entries.emplace_back(it.key(), it.value().get<std::string>());
  return from_entries<K>(field, entries);
}

template <class K>
Json matrix_to_json(const DenseMat<LaurentPoly<K>>& m, int n) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(poly_to_json(m(i, j), n));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class K>
DenseMat<LaurentPoly<K>> matrix_from_json(const FieldSpec& field, const Json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  DenseMat<LaurentPoly<K>> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = poly_from_json<K>(field, j.at(i).at(c));
  return m;
}

template <class K>
Json bimodule_to_json(const PlainBimodule<K>& m) {
  Json j = Json::object();
  j["datum"] = m.sys->datum.name;
  j["field"] = m.field.str();
  j["ring"] = "plain";
  j["rank"] = m.rank;
  j["recipe"] = m.recipe;
  const int n = m.lattice_rank();
  Json left = Json::array(), left_inv = Json::array(), dets = Json::array();
  for (int i = 0; i < n; ++i) {
    left.push_back(matrix_to_json(m.left[i], n));
    left_inv.push_back(matrix_to_json(m.left_inv[i], n));
    dets.push_back(poly_to_json(m.gen_det[i], n));
  }
  j["left"] = std::move(left);
  j["left_inv"] = std::move(left_inv);
  j["gen_det"] = std::move(dets);
  return j;
}

template <class K>
PlainBimodule<K> bimodule_from_json(SystemPtr sys, const Json& j) {
  PlainBimodule<K> m;
  m.sys = std::move(sys);
  if (j.at("datum").get<std::string>() != m.sys->datum.name)
    throw std::invalid_argument("bimodule_from_json: datum mismatch");
  if (j.at("ring").get<std::string>() != "plain") throw std::invalid_argument("bimodule_from_json: ring mismatch");
  m.field = FieldSpec::parse(j.at("field").get<std::string>());
  m.rank = j.at("rank").get<int>();
  m.recipe = j.at("recipe").get<std::string>();
  const int n = m.lattice_rank();
  for (int i = 0; i < n; ++i) {
    m.left.push_back(matrix_from_json<K>(m.field, j.at("left").at(i)));
    m.left_inv.push_back(matrix_from_json<K>(m.field, j.at("left_inv").at(i)));
    m.gen_det.push_back(poly_from_json<K>(m.field, j.at("gen_det").at(i)));
  }
  for (int i = 0; i < n; ++i) {
    if (m.left[i].rows() != m.rank || m.left[i].cols() != m.rank || m.left_inv[i].rows() != m.rank ||
        m.left_inv[i].cols() != m.rank)
      throw std::invalid_argument("bimodule_from_json: malformed matrices");
  }
  return m;
}

}  // namespace sbim
