#pragma once

#include <json.hpp>

#include <string>

#include "ncsched/core/instance.hpp"

namespace ncsched {

using Json = nlohmann::json;

/// Rationals travel as "num/den" strings; plain JSON integers are accepted on input.
Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& value);

/// {"version":1,"jobs":[{"id","p","w"}],"edges":[[from,to]]}
Json instance_to_json(const Instance& instance);
/// Throws Error{Parse} on schema problems, Error{InvalidInstance} on defects.
Instance instance_from_json(const Json& doc);
Validation validate_json(const Json& doc);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ncsched
