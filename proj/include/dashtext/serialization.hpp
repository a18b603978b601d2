#pragma once

#include <string>
#include <string_view>

#include "dashtext/types.hpp"

namespace dashtext {

nlohmann::json to_json(const DashboardDocument& doc);
// Shape checks only; call validate() for the tree invariants.
DashboardDocument document_from_json(const nlohmann::json& value);

// Canonical form: sorted keys, two-space indent, LF line endings, trailing newline.
std::string save(const DashboardDocument& doc);

// Throws unknown-schema-version, malformed-document or invariant-violation.
DashboardDocument load(std::string_view bytes);

nlohmann::json to_json(const TextSnippet& snippet);
nlohmann::json to_json(const Frame& frame);
nlohmann::json to_json(const Rect& rect);
nlohmann::json to_json(const Styling& styling);

}  // namespace dashtext
