#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shadowlab/errors.hpp"
#include "shadowlab/rational.hpp"
#include "shadowlab/space.hpp"

namespace shadowlab {

using Json = nlohmann::json;

namespace detail {

inline Rational rational_from_json(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(mpz_class(v.dump()));
  throw InputError(where + ": expected a rational string such as \"3/4\"");
}

inline std::vector<PointId> index_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + " must be an array of indices");
  std::vector<PointId> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0)
      throw InputError(where + " contains a non-index entry " + e.dump());
    out.push_back(static_cast<PointId>(e.get<long long>()));
  }
  return out;
}

}  // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(origin + ": malformed JSON (" + e.what() + ")");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses the space part only; metric axioms are not checked here.
inline FiniteMetricSpace space_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("system document must be a JSON object");
  if (!j.contains("points") || !j["points"].is_array()) throw InputError("missing \"points\" array");
  if (!j.contains("metric") || !j["metric"].is_array()) throw InputError("missing \"metric\" matrix");
  std::vector<std::string> labels;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) throw InputError("point labels must be strings");
    labels.push_back(p.get<std::string>());
  }
  std::vector<std::vector<Rational>> rows;
  std::size_t r = 0;
  for (const auto& row : j["metric"]) {
    if (!row.is_array()) throw StructuralError("metric row " + std::to_string(r) + " is not an array");
    std::vector<Rational> vals;
    std::size_t c = 0;
    for (const auto& v : row)
      vals.push_back(detail::rational_from_json(
          v, "metric[" + std::to_string(r) + "][" + std::to_string(c++) + "]"));
    rows.push_back(std::move(vals));
    ++r;
  }
  return FiniteMetricSpace(std::move(labels), rows);
}

/// Parses a system document. Throws StructuralError on shape problems and on a
/// "surjective": true flag that does not hold. Metric axioms are left to
/// validate_space so the caller can list every violation.
inline FiniteMetricSystem system_from_json(const Json& j) {
  FiniteMetricSpace space = space_from_json(j);
  if (!j.contains("map")) throw InputError("missing \"map\" array");
  FiniteMetricSystem sys(std::move(space), detail::index_array(j["map"], "\"map\""));
  if (j.contains("surjective")) {
    if (!j["surjective"].is_boolean()) throw InputError("\"surjective\" must be a boolean");
    if (j["surjective"].get<bool>() && !sys.is_surjective())
      throw StructuralError("system is flagged surjective but some point has no preimage");
  }
  return sys;
}

inline Json system_to_json(const FiniteMetricSystem& sys) {
  Json j;
  j["points"] = sys.space().labels();
  Json metric = Json::array();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < sys.size(); ++k) row.push_back(to_string(sys.d(i, k)));
    metric.push_back(std::move(row));
  }
  j["metric"] = std::move(metric);
  j["map"] = sys.map();
  return j;
}

inline FiniteMetricSystem load_system(const std::string& path) {
  return system_from_json(parse_json_text(read_text_file(path), path));
}

}  // namespace shadowlab
