#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace radex {

/// Validates a document against a JSON-Schema subset: type (string or
/// array of strings), properties, required, items (single schema), enum,
/// minimum, maximum, minItems. Unknown schema keywords are ignored.
/// Returns human-readable violations; empty means valid.
std::vector<std::string> json_schema_violations(const nlohmann::json& doc,
                                                const nlohmann::json& schema);

}  // namespace radex
