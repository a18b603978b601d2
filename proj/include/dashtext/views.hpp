#pragma once

// JSON renderings shared by the HTTP API and the CLI.

#include <vector>

#include "dashtext/data_tables.hpp"
#include "dashtext/generation.hpp"
#include "dashtext/metrics.hpp"
#include "dashtext/scope.hpp"
#include "dashtext/suggestions.hpp"

namespace dashtext {

nlohmann::json plan_json(const GenerationPlan& plan);
nlohmann::json report_json(const GenerationReport& report);
nlohmann::json suggestion_json(const Suggestion& suggestion);
nlohmann::json suggestions_json(const std::vector<Suggestion>& suggestions);
nlohmann::json snippet_view(const DashboardDocument& doc, const SnippetId& snippet);

// Metrics, the role's guideline band, conformance, and which data files
// produced them.
nlohmann::json metrics_json(const DashboardDocument& doc, const SnippetId& snippet, const DataTables& tables);

// Request decoding; shape errors throw bad-request.
Rect rect_from_request(const nlohmann::json& value);
Styling styling_from_request(const nlohmann::json& value);
TextRole role_from_request(const nlohmann::json& value);
std::map<std::string, std::string> facts_from_request(const nlohmann::json& value);

}  // namespace dashtext
