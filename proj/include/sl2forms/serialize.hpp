#pragma once

// JSON encodings. Field elements use the field's own string form
// ("p/q", decimal residues, "0x.." bit-strings, "x+y*sqrt(a)").

#include <string>

#include <json.hpp>

#include "char2.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "forms.hpp"
#include "local_invariants.hpp"
#include "matrix.hpp"

namespace sl2forms {

using Json = nlohmann::ordered_json;

template <Field K>
Json matrix_to_json(const K& k, const MatrixOf<K>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(k.to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Field K>
MatrixOf<K> matrix_from_json(const K& k, const Json& j) {
  if (!j.is_array()) throw parse_error("matrix must be a JSON array of rows");
  const std::size_t n = j.size();
  auto m = zero_matrix(k, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw parse_error("matrix must be square");
    for (std::size_t c = 0; c < n; ++c) {
      const auto& e = j[r][c];
      m(r, c) = k.parse(e.is_string() ? e.get<std::string>() : e.dump());
    }
  }
  return m;
}

template <Field K>
Json to_json(const DiagonalForm<K>& f) {
  Json entries = Json::array();
  for (const auto& x : f.entries) entries.push_back(f.field.to_string(x));
  return entries;
}

template <Field K>
Json to_json(const GramForm<K>& f) {
  return matrix_to_json(f.field(), f.gram());
}

inline Json to_json(const QFormChar2<BinaryField>& q) {
  Json values = Json::array();
  for (auto v : q.values()) values.push_back(q.field().to_string(v));
  return {{"polar", matrix_to_json(q.field(), q.polar())}, {"values", values}};
}

inline QFormChar2<BinaryField> qform_from_json(const BinaryField& k, const Json& j) {
  if (!j.is_object() || !j.contains("polar") || !j.contains("values"))
    throw parse_error("quadratic form must be {\"polar\": [[...]], \"values\": [...]}");
  auto polar = matrix_from_json(k, j["polar"]);
  std::vector<Bits> values;
  for (const auto& v : j["values"]) values.push_back(k.parse(v.get<std::string>()));
  try {
    return QFormChar2<BinaryField>(k, std::move(polar), std::move(values));
  } catch (const domain_error& e) {
    throw parse_error(e.what());
  }
}

/// {field, dim, radical, signature, disc, hasse} over Q;
/// {field, dim, radical, disc} over F_p with disc "square" or "nonsquare".
inline Json to_json(const InvariantRecord& r) {
  Json j = {{"field", r.field}, {"dim", r.dimension}, {"radical", r.radical_dim}};
  if (const auto* q = std::get_if<RationalRecord>(&r.data)) {
    j["signature"] = {q->positive, q->negative};
    j["disc"] = q->disc.get_str();
    Json hasse = Json::object();
    for (const auto& [v, s] : q->hasse) hasse[v.to_string()] = s;
    j["hasse"] = hasse;
  } else {
    j["disc"] = std::get<FiniteRecord>(r.data).disc_is_square ? "square" : "nonsquare";
  }
  return j;
}

inline Json to_json(const Char2Class& c) {
  Json j = {{"zeros", c.zeros}, {"pairs", c.pairs}, {"quasilinear", c.quasilinear}};
  j["arf"] = c.arf ? Json(*c.arf) : Json(nullptr);
  return j;
}

}  // namespace sl2forms
