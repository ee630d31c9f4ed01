#pragma once

// JSON wire format for metric Lie algebras:
//
//   {"schema": 1, "dim": 4,
//    "brackets": [[1, 2, [0, 0, 1, 0]], ...],   // [e_i, e_j], 1-based, i < j
//    "metric": [[...], ...],                     // optional Gram matrix, rows
//    "derivation": [[...], ...],                 // optional D on span(e_1..e_{dim-1}), rows
//    "meta": {...}}                              // optional, free-form

#include <optional>
#include <string>
#include <vector>

#include "curvlie/lie_algebra.hpp"
#include "curvlie/metric.hpp"
#include "curvlie/tolerance.hpp"
#include "json.hpp"

namespace curvlie {

using json = nlohmann::ordered_json;

struct BracketEntry {
  int i = 0;  ///< 1-based
  int j = 0;
  std::vector<double> coeffs;

  bool operator==(const BracketEntry&) const = default;
};

struct AlgebraDocument {
  int dim = 0;
  std::vector<BracketEntry> brackets;
  std::optional<Mat> metric;
  std::optional<Mat> derivation;
  json meta = json::object();

  bool operator==(const AlgebraDocument& o) const {
    auto same = [](const std::optional<Mat>& a, const std::optional<Mat>& b) {
      if (a.has_value() != b.has_value()) return false;
      return !a || (a->rows() == b->rows() && a->cols() == b->cols() && *a == *b);
    };
    return dim == o.dim && brackets == o.brackets && same(metric, o.metric) && same(derivation, o.derivation) &&
           meta == o.meta;
  }
};

namespace doc_detail {

inline json matrix_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

inline double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(where + ": non-finite number");
  return x;
}

inline Mat matrix(const json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) throw InputError(where + ": expected " + std::to_string(n) + " rows");
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& r = v[i];
    if (!r.is_array() || static_cast<int>(r.size()) != n)
      throw InputError(where + ": row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) m(i, j) = number(r[j], where);
  }
  return m;
}

inline int index(const json& v, int dim, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": index must be an integer");
  const long long k = v.get<long long>();
  if (k < 1 || k > dim) throw InputError(where + ": index out of range 1.." + std::to_string(dim));
  return static_cast<int>(k);
}

}  // namespace doc_detail

inline json to_json(const AlgebraDocument& d) {
  json j;
  j["schema"] = 1;
  j["dim"] = d.dim;
  json br = json::array();
  for (const auto& b : d.brackets) br.push_back(json::array({b.i, b.j, b.coeffs}));
  j["brackets"] = br;
  if (d.metric) j["metric"] = doc_detail::matrix_json(*d.metric);
  if (d.derivation) j["derivation"] = doc_detail::matrix_json(*d.derivation);
  if (!d.meta.empty()) j["meta"] = d.meta;
  return j;
}

inline std::string render(const AlgebraDocument& d) { return to_json(d).dump(2) + "\n"; }

inline AlgebraDocument from_json(const json& j) {
  if (!j.is_object()) throw InputError("document: top level must be an object");
  for (const auto& [k, v] : j.items())
    if (k != "schema" && k != "dim" && k != "brackets" && k != "metric" && k != "derivation" && k != "meta")
      throw InputError("document: unknown field '" + k + "'");
  if (j.contains("schema") && j["schema"] != 1) throw InputError("document: unsupported schema");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw InputError("document: 'dim' must be an integer");
  AlgebraDocument d;
  const long long dim = j["dim"].get<long long>();
  if (dim < 1 || dim > LieAlgebra::kMaxDim) throw InputError("document: 'dim' must be in 1..8");
  d.dim = static_cast<int>(dim);
  if (!j.contains("brackets") || !j["brackets"].is_array()) throw InputError("document: 'brackets' must be a list");
  std::vector<std::pair<int, int>> seen;
  for (const auto& e : j["brackets"]) {
    if (!e.is_array() || e.size() != 3) throw InputError("document: bracket entries are [i, j, coefficients]");
    BracketEntry b;
    b.i = doc_detail::index(e[0], d.dim, "brackets");
    b.j = doc_detail::index(e[1], d.dim, "brackets");
    if (b.i >= b.j) throw InputError("document: bracket entries need i < j");
    for (const auto& p : seen)
      if (p == std::make_pair(b.i, b.j))
        throw InputError("document: duplicate bracket [e" + std::to_string(b.i) + ", e" + std::to_string(b.j) + "]");
    seen.emplace_back(b.i, b.j);
    if (!e[2].is_array() || static_cast<int>(e[2].size()) != d.dim)
      throw InputError("document: bracket coefficients must have length dim");
    for (const auto& c : e[2]) b.coeffs.push_back(doc_detail::number(c, "brackets"));
    d.brackets.push_back(std::move(b));
  }
  if (j.contains("metric")) d.metric = doc_detail::matrix(j["metric"], d.dim, "metric");
  if (j.contains("derivation")) {
    if (d.dim < 2) throw InputError("document: 'derivation' needs dim >= 2");
    d.derivation = doc_detail::matrix(j["derivation"], d.dim - 1, "derivation");
  }
  if (j.contains("meta")) d.meta = j["meta"];
  return d;
}

inline AlgebraDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("document: ") + e.what());
  }
  return from_json(j);
}

inline LieAlgebra document_algebra(const AlgebraDocument& d) {
  LieAlgebra L(d.dim);
  for (const auto& b : d.brackets) L.set_bracket(b.i - 1, b.j - 1, Eigen::Map<const Vec>(b.coeffs.data(), d.dim));
  return L;
}

/// The metric Lie algebra of a document after Jacobi, metric and derivation
/// consistency checks.
inline MetricAlgebra document_metric_algebra(const AlgebraDocument& d, const ToleranceConfig& tc = {}) {
  MetricAlgebra g(document_algebra(d));
  if (d.metric) g.gram = *d.metric;
  const double jd = jacobi_defect(g.alg);
  if (jd > tc.tol_struct * std::max(1.0, g.alg.scale() * g.alg.scale()))
    throw InputError("document: brackets violate the Jacobi identity (defect " + std::to_string(jd) + ")");
  g.validate(tc);
  if (d.derivation) {
    const int m = d.dim - 1;
    double dev = 0;
    for (int j = 0; j < m; ++j) {
      const Vec b = g.alg.basis_bracket(m, j);
      dev = std::max(dev, std::abs(b(m)));
      dev = std::max(dev, max_abs(Vec(b.head(m) - d.derivation->col(j))));
    }
    if (dev > tc.tol_struct * std::max(1.0, max_abs(*d.derivation)))
      throw InputError("document: 'derivation' does not match the brackets [e" + std::to_string(d.dim) + ", e_j]");
  }
  return g;
}

/// Document listing every nonzero bracket of g; the metric is omitted when it
/// is the identity.
inline AlgebraDocument make_document(const MetricAlgebra& g, json meta = json::object(),
                                     const std::optional<Mat>& derivation = std::nullopt) {
  AlgebraDocument d;
  d.dim = g.dim();
  for (int i = 0; i < d.dim; ++i)
    for (int j = i + 1; j < d.dim; ++j) {
      const Vec v = g.alg.basis_bracket(i, j);
      if (max_abs(v) == 0.0) continue;
      d.brackets.push_back({i + 1, j + 1, std::vector<double>(v.data(), v.data() + v.size())});
    }
  if (g.gram != Mat::Identity(d.dim, d.dim)) d.metric = g.gram;
  d.derivation = derivation;
  d.meta = std::move(meta);
  return d;
}

}  // namespace curvlie
