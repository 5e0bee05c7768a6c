#pragma once

#include <string>

#include "json.hpp"

namespace schema {

using Json = nlohmann::json;

/// Checks the subset of JSON Schema used by the report schema: type,
/// required, properties, additionalProperties = false, items, enum and local
/// $ref. Returns the first violation as a JSON pointer plus message, or "".
inline std::string check(const Json& value, const Json& node, const Json& root, const std::string& at = "") {
  if (node.contains("$ref")) {
    const std::string ref = node["$ref"];
    return check(value, root.at(Json::json_pointer(ref.substr(1))), root, at);
  }
  if (node.contains("type")) {
    const std::string t = node["type"];
    const bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                    (t == "string" && value.is_string()) || (t == "boolean" && value.is_boolean()) ||
                    (t == "integer" && value.is_number_integer()) || (t == "number" && value.is_number());
    if (!ok) return at + ": expected " + t;
  }
  if (node.contains("enum")) {
    bool found = false;
    for (const auto& e : node["enum"]) found = found || e == value;
    if (!found) return at + ": value not in enum";
  }
  if (value.is_object()) {
    if (node.contains("required"))
      for (const auto& r : node["required"])
        if (!value.contains(r.get<std::string>())) return at + ": missing " + r.get<std::string>();
    const bool closed = node.contains("additionalProperties") && node["additionalProperties"] == false;
    for (const auto& [k, v] : value.items()) {
      if (node.contains("properties") && node["properties"].contains(k)) {
        if (auto e = check(v, node["properties"][k], root, at + "/" + k); !e.empty()) return e;
      } else if (closed) {
        return at + ": unexpected property " + k;
      }
    }
  }
  if (value.is_array() && node.contains("items"))
    for (size_t i = 0; i < value.size(); ++i)
      if (auto e = check(value[i], node["items"], root, at + "/" + std::to_string(i)); !e.empty()) return e;
  return {};
}

inline std::string check(const Json& value, const Json& schema) { return check(value, schema, schema); }

}  // namespace schema
