#include "radex/json_schema.hpp"

namespace radex {

namespace {

bool matches_type(const nlohmann::json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "number") return doc.is_number();
  if (type == "integer") return doc.is_number_integer();
  if (type == "boolean") return doc.is_boolean();
  if (type == "null") return doc.is_null();
  return false;
}

void check(const nlohmann::json& doc, const nlohmann::json& schema,
           const std::string& path, std::vector<std::string>& out) {
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(doc, t.get<std::string>());
    } else if (t.is_array()) {
      for (const auto& alt : t)
        if (matches_type(doc, alt.get<std::string>())) {
          ok = true;
          break;
        }
    }
    if (!ok) {
      out.push_back(path + ": expected type " + t.dump());
      return;  // further keyword checks assume the right type
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema["enum"])
      if (v == doc) {
        ok = true;
        break;
      }
    if (!ok) out.push_back(path + ": value not in enum " + schema["enum"].dump());
  }
  if (doc.is_number()) {
    if (schema.contains("minimum") &&
        doc.get<double>() < schema["minimum"].get<double>())
      out.push_back(path + ": below minimum");
    if (schema.contains("maximum") &&
        doc.get<double>() > schema["maximum"].get<double>())
      out.push_back(path + ": above maximum");
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!doc.contains(key.get<std::string>()))
          out.push_back(path + ": missing required property '" +
                        key.get<std::string>() + "'");
    if (schema.contains("properties"))
      for (const auto& [key, sub] : schema["properties"].items())
        if (doc.contains(key)) check(doc[key], sub, path + "/" + key, out);
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") &&
        doc.size() < schema["minItems"].get<std::size_t>())
      out.push_back(path + ": fewer than minItems elements");
    if (schema.contains("items")) {
      std::size_t i = 0;
      for (const auto& item : doc) {
        check(item, schema["items"], path + "/" + std::to_string(i), out);
        ++i;
      }
    }
  }
}

}  // namespace

std::vector<std::string> json_schema_violations(const nlohmann::json& doc,
                                                const nlohmann::json& schema) {
  std::vector<std::string> violations;
  check(doc, schema, "#", violations);
  return violations;
}

}  // namespace radex
