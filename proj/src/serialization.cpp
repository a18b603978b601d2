#include "dashtext/serialization.hpp"

#include "dashtext/document.hpp"
#include "dashtext/error.hpp"

namespace dashtext {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::malformed_document, what);
}

const json& field(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& object, const char* key) {
  const json& value = field(object, key);
  if (!value.is_string()) malformed(std::string("field '") + key + "' must be a string");
  return value.get<std::string>();
}

double number_field(const json& object, const char* key) {
  const json& value = field(object, key);
  if (!value.is_number()) malformed(std::string("field '") + key + "' must be a number");
  return value.get<double>();
}

std::vector<std::string> id_list(const json& object, const char* key) {
  const json& value = field(object, key);
  if (!value.is_array()) malformed(std::string("field '") + key + "' must be an array");
  std::vector<std::string> ids;
  for (const auto& item : value) {
    if (!item.is_string()) malformed(std::string("field '") + key + "' must hold strings");
    ids.push_back(item.get<std::string>());
  }
  return ids;
}

template <typename Enum, typename Parser>
Enum enum_field(const json& object, const char* key, Parser parse) {
  auto parsed = parse(string_field(object, key));
  if (!parsed) malformed(std::string("field '") + key + "' has an unknown value");
  return *parsed;
}

const json& object_field(const json& object, const char* key) {
  const json& value = field(object, key);
  if (!value.is_object()) malformed(std::string("field '") + key + "' must be an object");
  return value;
}

Rect rect_from_json(const json& value) {
  if (!value.is_object()) malformed("geometry must be an object");
  return {number_field(value, "x"), number_field(value, "y"), number_field(value, "width"),
          number_field(value, "height")};
}

Styling styling_from_json(const json& value) {
  if (!value.is_object()) malformed("styling must be an object");
  return {enum_field<FormatClass>(value, "format_class", parse_format_class),
          enum_field<Prominence>(value, "prominence", parse_prominence)};
}

}  // namespace

json to_json(const Rect& rect) {
  return json{{"x", rect.x}, {"y", rect.y}, {"width", rect.width}, {"height", rect.height}};
}

json to_json(const Styling& styling) {
  return json{{"format_class", to_string(styling.format_class)},
              {"prominence", to_string(styling.prominence)}};
}

json to_json(const Frame& frame) {
  json out{{"children", frame.children},
           {"chart_ids", frame.chart_ids},
           {"geometry", to_json(frame.geometry)},
           {"snippet_ids", frame.snippet_ids}};
  out["parent"] = frame.parent ? json(*frame.parent) : json(nullptr);
  return out;
}

json to_json(const TextSnippet& snippet) {
  json out{{"content", snippet.content},
           {"created_by", to_string(snippet.created_by)},
           {"frame", snippet.frame},
           {"role", to_string(snippet.role)},
           {"state", to_string(snippet.state)},
           {"styling", to_json(snippet.styling)}};
  if (!snippet.facts.empty()) out["facts"] = snippet.facts;
  return out;
}

json to_json(const DashboardDocument& doc) {
  json frames = json::object();
  for (const auto& [id, frame] : doc.frames) frames[id] = to_json(frame);
  json charts = json::object();
  for (const auto& [id, chart] : doc.charts) {
    json entry{{"rendered_svg", chart.rendered_svg}, {"spec", chart.spec}};
    if (chart.title_hint) entry["title_hint"] = *chart.title_hint;
    charts[id] = std::move(entry);
  }
  json snippets = json::object();
  for (const auto& [id, snippet] : doc.snippets) snippets[id] = to_json(snippet);
  json suggestions = json::array();
  for (const auto& entry : doc.suggestions) {
    suggestions.push_back({{"id", entry.id}, {"status", to_string(entry.status)}});
  }
  return json{{"schema_version", doc.schema_version},
              {"id", doc.id},
              {"root", doc.root},
              {"next_serial", doc.next_serial},
              {"frames", std::move(frames)},
              {"charts", std::move(charts)},
              {"snippets", std::move(snippets)},
              {"suggestions", std::move(suggestions)}};
}

DashboardDocument document_from_json(const json& value) {
  if (!value.is_object()) malformed("document must be an object");
  const std::string schema = string_field(value, "schema_version");
  if (schema != kSchemaVersion) {
    throw Error(ErrorCode::unknown_schema_version, "unsupported schema '" + schema + "'");
  }
  DashboardDocument doc;
  doc.schema_version = schema;
  doc.id = string_field(value, "id");
  doc.root = string_field(value, "root");
  const json& serial = field(value, "next_serial");
  if (!serial.is_number_unsigned()) malformed("next_serial must be a non-negative integer");
  doc.next_serial = serial.get<std::uint64_t>();

  for (const auto& [id, entry] : object_field(value, "frames").items()) {
    if (!entry.is_object()) malformed("frame '" + id + "' must be an object");
    Frame frame;
    frame.id = id;
    const json& parent = field(entry, "parent");
    if (parent.is_string()) {
      frame.parent = parent.get<std::string>();
    } else if (!parent.is_null()) {
      malformed("frame parent must be a string or null");
    }
    frame.children = id_list(entry, "children");
    frame.geometry = rect_from_json(field(entry, "geometry"));
    frame.chart_ids = id_list(entry, "chart_ids");
    frame.snippet_ids = id_list(entry, "snippet_ids");
    doc.frames.emplace(id, std::move(frame));
  }
  for (const auto& [id, entry] : object_field(value, "charts").items()) {
    if (!entry.is_object()) malformed("chart '" + id + "' must be an object");
    Chart chart;
    chart.id = id;
    chart.spec = field(entry, "spec");
    chart.rendered_svg = string_field(entry, "rendered_svg");
    if (entry.contains("title_hint")) chart.title_hint = string_field(entry, "title_hint");
    doc.charts.emplace(id, std::move(chart));
  }
  for (const auto& [id, entry] : object_field(value, "snippets").items()) {
    if (!entry.is_object()) malformed("snippet '" + id + "' must be an object");
    TextSnippet snippet;
    snippet.id = id;
    snippet.frame = string_field(entry, "frame");
    snippet.role = enum_field<TextRole>(entry, "role", parse_role);
    snippet.state = enum_field<SnippetState>(entry, "state", parse_state);
    snippet.content = string_field(entry, "content");
    snippet.styling = styling_from_json(field(entry, "styling"));
    snippet.created_by = enum_field<CreatedBy>(entry, "created_by", parse_created_by);
    if (entry.contains("facts")) {
      const json& facts = object_field(entry, "facts");
      for (const auto& [key, fact] : facts.items()) {
        if (!fact.is_string()) malformed("facts must map names to strings");
        snippet.facts[key] = fact.get<std::string>();
      }
    }
    doc.snippets.emplace(id, std::move(snippet));
  }
  const json& suggestions = field(value, "suggestions");
  if (!suggestions.is_array()) malformed("suggestions must be an array");
  for (const auto& entry : suggestions) {
    if (!entry.is_object()) malformed("suggestion entries must be objects");
    doc.suggestions.push_back({string_field(entry, "id"),
                               enum_field<SuggestionStatus>(entry, "status", parse_suggestion_status)});
  }
  return doc;
}

std::string save(const DashboardDocument& doc) {
  return to_json(doc).dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

DashboardDocument load(std::string_view bytes) {
  json value;
  try {
    value = json::parse(bytes);
  } catch (const json::exception& e) {
    malformed(std::string("not a JSON document: ") + e.what());
  }
  DashboardDocument doc = document_from_json(value);
  validate(doc);
  return doc;
}

}  // namespace dashtext
