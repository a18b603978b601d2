#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "json.hpp"

namespace dashtext {

// Throws malformed_spec unless the text is a JSON object.
nlohmann::json parse_chart_spec(std::string_view text);

// Tag balance, quoting and comment/CDATA termination. Not a validating parser.
bool is_well_formed_markup(std::string_view markup);

// True when the spec declares selection parameters, legacy selections or
// input bindings at any nesting level.
bool has_interaction_bindings(const nlohmann::json& spec);

inline constexpr std::size_t kDefaultSvgBudget = 20000;
inline constexpr std::string_view kSvgTruncationMarker = "<!-- truncated -->";

// Drops trailing elements (cutting at a tag start) until the text plus the
// marker fits the budget. Text already within budget is returned unchanged.
std::string truncate_svg(std::string_view svg, std::size_t budget = kDefaultSvgBudget);

}  // namespace dashtext
