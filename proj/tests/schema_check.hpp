#pragma once

// Minimal JSON-Schema conformance checker for the subset the report schema
// uses: type (string or list), required, properties, items, enum. Test-only.

#include <string>

#include <json.hpp>

inline bool matches_type(const nlohmann::json& value, const std::string& t) {
  if (t == "object") return value.is_object();
  if (t == "array") return value.is_array();
  if (t == "string") return value.is_string();
  if (t == "integer") return value.is_number_integer() ||
                              value.is_number_unsigned();
  if (t == "number") return value.is_number();
  if (t == "boolean") return value.is_boolean();
  if (t == "null") return value.is_null();
  return false;
}

inline bool schema_conforms(const nlohmann::json& value,
                            const nlohmann::json& schema,
                            std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(value, t.get<std::string>());
    } else {
      for (const auto& alt : t)
        ok = ok || matches_type(value, alt.get<std::string>());
    }
    if (!ok) return fail("type mismatch: " + value.dump() + " vs " + t.dump());
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& alt : schema["enum"]) ok = ok || alt == value;
    if (!ok) return fail("enum mismatch: " + value.dump());
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          return fail("missing required key " + key.get<std::string>());
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items())
        if (value.contains(key) && !schema_conforms(value[key], sub, why))
          return false;
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (const auto& item : value)
      if (!schema_conforms(item, schema["items"], why)) return false;
  }
  return true;
}
