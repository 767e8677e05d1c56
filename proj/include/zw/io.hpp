#pragma once

#include "zw/diagram.hpp"
#include "zw/normal_form.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace zw {

using Json = nlohmann::ordered_json;

enum class Format { Term, Json };

Json diagram_to_json_value(const Diagram& g);
// Compact single-line JSON.
std::string diagram_to_json(const Diagram& g);

// Structural decoding only; call validate() for invariants.
Diagram diagram_from_json_value(const Json& j);
Diagram diagram_from_json(std::string_view text);

// Parses and validates. Throws ParseError, TypeError or ValidationError.
Diagram parse_diagram(std::string_view text, Format format);

Json nf_to_json_value(const NormalForm& nf);
std::string nf_to_json(const NormalForm& nf);
NormalForm nf_from_json(std::string_view text);

std::string render_dot(const Diagram& g);

} // namespace zw
