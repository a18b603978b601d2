#include "dashtext/views.hpp"

#include "dashtext/document.hpp"
#include "dashtext/serialization.hpp"

namespace dashtext {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::bad_request, message); }

json range_json(const Range& range) { return json::array({range.min, range.max}); }

double number(const json& value, const char* key) {
  if (!value.contains(key) || !value[key].is_number()) bad(std::string("'") + key + "' must be a number");
  return value[key].get<double>();
}

}  // namespace

json plan_json(const GenerationPlan& plan) {
  return json{{"order", plan.order}, {"levels", plan.levels}};
}

json report_json(const GenerationReport& report) {
  json outcomes = json::array();
  for (const auto& o : report.outcomes) {
    json item{{"snippet", o.snippet}, {"level", o.level}, {"ok", o.ok}};
    if (o.ok) item["content"] = o.content;
    if (o.error) {
      item["error"] = code_name(*o.error);
      item["message"] = o.message;
    }
    outcomes.push_back(std::move(item));
  }
  return json{{"plan", plan_json(report.plan)},
              {"outcomes", std::move(outcomes)},
              {"generated", report.generated()},
              {"failed", report.failed()}};
}

json suggestion_json(const Suggestion& s) {
  json out{{"id", s.id}, {"title", s.title}, {"description", s.description}, {"status", to_string(s.status)}};
  if (s.role) out["role"] = to_string(*s.role);
  if (s.advisory) out["advisory"] = to_string(*s.advisory);
  return out;
}

json suggestions_json(const std::vector<Suggestion>& suggestions) {
  json out = json::array();
  for (const auto& s : suggestions) out.push_back(suggestion_json(s));
  return out;
}

json snippet_view(const DashboardDocument& doc, const SnippetId& id) {
  json out = to_json(get_snippet(doc, id));
  out["id"] = id;
  return out;
}

json metrics_json(const DashboardDocument& doc, const SnippetId& id, const DataTables& tables) {
  const TextSnippet& snippet = get_snippet(doc, id);
  const MetricsReport report = analyze(doc, id, tables.stopwords);
  const RoleGuideline& guideline = tables.guidelines.guideline(snippet.role);
  const ConformanceReport conf = conformance(report, guideline);
  return json{
      {"snippet", id},
      {"role", to_string(snippet.role)},
      {"metrics",
       {{"word_count", report.word_count},
        {"sentence_count", report.sentence_count},
        {"syllable_count", report.syllable_count},
        {"lexical_density", report.lexical_density},
        {"fk_grade", report.fk_grade}}},
      {"guideline",
       {{"word_count", range_json(guideline.word_range)},
        {"fk_grade", range_json(guideline.fk_range)},
        {"lexical_density", range_json(guideline.density_range)},
        {"advisory", guideline.advisory},
        {"origin", guideline.published ? "published" : "default"}}},
      {"conformance",
       {{"word_count", to_string(conf.word_count)},
        {"fk_grade", to_string(conf.fk_grade)},
        {"lexical_density", to_string(conf.lexical_density)}}},
      {"provenance",
       {{"stopwords", {{"version", tables.stopwords.version}, {"hash", tables.stopwords.hash}}},
        {"guidelines", {{"version", tables.guidelines.version}, {"hash", tables.guidelines.hash}}}}}};
}

Rect rect_from_request(const json& value) {
  if (!value.is_object()) bad("geometry must be an object with x, y, width, height");
  return {number(value, "x"), number(value, "y"), number(value, "width"), number(value, "height")};
}

Styling styling_from_request(const json& value) {
  if (!value.is_object() || !value.contains("format_class") || !value.contains("prominence") ||
      !value["format_class"].is_string() || !value["prominence"].is_string()) {
    bad("styling needs string fields format_class and prominence");
  }
  auto format = parse_format_class(value["format_class"].get<std::string>());
  auto prominence = parse_prominence(value["prominence"].get<std::string>());
  if (!format) bad("unknown format_class '" + value["format_class"].get<std::string>() + "'");
  if (!prominence) bad("unknown prominence '" + value["prominence"].get<std::string>() + "'");
  return {*format, *prominence};
}

TextRole role_from_request(const json& value) {
  if (!value.is_string()) bad("role must be a string");
  auto role = parse_role(value.get<std::string>());
  if (!role) bad("unknown role '" + value.get<std::string>() + "'");
  return *role;
}

std::map<std::string, std::string> facts_from_request(const json& value) {
  if (!value.is_object()) bad("facts must be an object of strings");
  std::map<std::string, std::string> facts;
  for (const auto& [key, v] : value.items()) {
    if (!v.is_string()) bad("fact '" + key + "' must be a string");
    facts[key] = v.get<std::string>();
  }
  return facts;
}

}  // namespace dashtext
