#pragma once

// Subset of JSON Schema used by the shipped schema files: type (string or
// list), required, properties, items, enum, minimum.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace schema_check {

using json = nlohmann::json;

inline bool type_matches(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  return false;
}

inline void validate(const json& v, const json& s, const std::string& where, std::vector<std::string>& errors) {
  if (s.contains("type")) {
    const json types = s["type"].is_array() ? s["type"] : json::array({s["type"]});
    bool any = false;
    for (const auto& t : types) any = any || type_matches(v, t.get<std::string>());
    if (!any) {
      errors.push_back(where + ": expected type " + s["type"].dump());
      return;
    }
  }
  if (s.contains("enum")) {
    bool hit = false;
    for (const auto& e : s["enum"]) hit = hit || e == v;
    if (!hit) errors.push_back(where + ": " + v.dump() + " not in enum");
  }
  if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
    errors.push_back(where + ": below minimum");
  }
  if (v.is_object()) {
    const json required = s.value("required", json::array());
    for (const auto& r : required) {
      if (!v.contains(r.get<std::string>())) errors.push_back(where + ": missing " + r.get<std::string>());
    }
    const json properties = s.value("properties", json::object());
    for (const auto& [k, sub] : properties.items()) {
      if (v.contains(k)) validate(v[k], sub, where + "." + k, errors);
    }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) validate(v[i], s["items"], where + "[" + std::to_string(i) + "]", errors);
  }
}

inline std::vector<std::string> validate_against_file(const json& v, const std::string& path) {
  std::ifstream f(path);
  std::vector<std::string> errors;
  if (!f) return {"cannot open " + path};
  validate(v, json::parse(f), "$", errors);
  return errors;
}

}  // namespace schema_check
