#include "dashtext/data_tables.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dashtext/error.hpp"

namespace dashtext {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::invalid_data_file, what);
}

json parse_json(std::string_view text, const char* what) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded() || !value.is_object()) invalid(std::string(what) + " is not a JSON object");
  return value;
}

std::string require_string(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_string()) invalid(where + ": '" + key + "' must be a string");
  return it->get<std::string>();
}

const json& require_object(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_object()) invalid(where + ": '" + key + "' must be an object");
  return *it;
}

Styling styling_from(const json& value, const std::string& where) {
  if (!value.is_object()) invalid(where + ": styling must be an object");
  auto format = parse_format_class(require_string(value, "format_class", where));
  auto prominence = parse_prominence(require_string(value, "prominence", where));
  if (!format || !prominence) invalid(where + ": unknown styling value");
  return {*format, *prominence};
}

Range range_from(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
      !(*it)[1].is_number()) {
    invalid(where + ": '" + key + "' must be [min, max]");
  }
  Range range{(*it)[0].get<double>(), (*it)[1].get<double>()};
  if (range.min > range.max) invalid(where + ": '" + key + "' has min > max");
  return range;
}

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::string_view to_string(PlacementTarget target) noexcept {
  switch (target) {
    case PlacementTarget::root_once: return "root_once";
    case PlacementTarget::every_frame: return "every_frame";
    case PlacementTarget::every_section_frame: return "every_section_frame";
    case PlacementTarget::every_leaf_chart_frame: return "every_leaf_chart_frame";
  }
  return "?";
}

std::string_view to_string(PlacementPosition position) noexcept {
  switch (position) {
    case PlacementPosition::top_of_frame: return "top_of_frame";
    case PlacementPosition::under_each_chart: return "under_each_chart";
    case PlacementPosition::bottom_of_frame: return "bottom_of_frame";
    case PlacementPosition::under_dashboard_title: return "under_dashboard_title";
  }
  return "?";
}

RuleTable parse_rule_table(std::string_view text) {
  const json root = parse_json(text, "rule table");
  RuleTable table;
  table.version = require_string(root, "version", "rule table");
  table.hash = fnv1a_hex(text);

  const json& rules = require_object(root, "rules", "rule table");
  for (TextRole role : kAllRoles) {
    const std::string name(to_string(role));
    const std::string where = "rule '" + name + "'";
    const json& entry = require_object(rules, name.c_str(), "rule table");
    PlacementRule rule;
    rule.role = role;
    const std::string target = require_string(entry, "target", where);
    const std::string position = require_string(entry, "position", where);
    bool target_ok = false;
    for (auto t : {PlacementTarget::root_once, PlacementTarget::every_frame,
                   PlacementTarget::every_section_frame, PlacementTarget::every_leaf_chart_frame}) {
      if (to_string(t) == target) { rule.target = t; target_ok = true; }
    }
    bool position_ok = false;
    for (auto p : {PlacementPosition::top_of_frame, PlacementPosition::under_each_chart,
                   PlacementPosition::bottom_of_frame, PlacementPosition::under_dashboard_title}) {
      if (to_string(p) == position) { rule.position = p; position_ok = true; }
    }
    if (!target_ok || !position_ok) invalid(where + ": unknown target or position");
    rule.default_styling = styling_from(require_object(entry, "default_styling", where), where);
    if (entry.contains("root_styling")) rule.root_styling = styling_from(entry["root_styling"], where);
    table.rules.emplace(role, rule);
  }
  const PlacementRule& metadata = table.rules.at(TextRole::metadata);
  if (metadata.target != PlacementTarget::root_once ||
      metadata.position != PlacementPosition::bottom_of_frame) {
    invalid("metadata must be placed once, at the bottom of the root frame");
  }
  if (table.rules.at(TextRole::interaction).target != PlacementTarget::every_leaf_chart_frame) {
    invalid("interaction text must target chart frames");
  }

  const json& suggestions = require_object(root, "suggestions", "rule table");
  std::vector<std::string> names;
  for (TextRole role : kAllRoles) names.emplace_back(to_string(role));
  for (auto kind : {AdvisoryKind::readability, AdvisoryKind::reading_order, AdvisoryKind::formatting}) {
    names.emplace_back(to_string(kind));
  }
  for (const auto& name : names) {
    const std::string where = "suggestion '" + name + "'";
    const json& entry = require_object(suggestions, name.c_str(), "rule table");
    table.suggestions[name] = {require_string(entry, "title", where),
                               require_string(entry, "description", where)};
  }

  const json& compatibility = require_object(root, "role_compatibility", "rule table");
  for (const auto& [target, sources] : compatibility.items()) {
    auto target_role = parse_role(target);
    if (!target_role || !sources.is_array()) invalid("role_compatibility: bad entry '" + target + "'");
    auto& list = table.compatibility.sources[*target_role];
    for (const auto& source : sources) {
      auto source_role = source.is_string() ? parse_role(source.get<std::string>()) : std::nullopt;
      if (!source_role) invalid("role_compatibility: unknown role for '" + target + "'");
      list.push_back(*source_role);
    }
  }
  return table;
}

GuidelineTable parse_guideline_table(std::string_view text) {
  const json root = parse_json(text, "guideline table");
  GuidelineTable table;
  table.version = require_string(root, "version", "guideline table");
  table.hash = fnv1a_hex(text);
  const json& roles = require_object(root, "roles", "guideline table");
  for (TextRole role : kAllRoles) {
    const std::string name(to_string(role));
    const std::string where = "guideline '" + name + "'";
    const json& entry = require_object(roles, name.c_str(), "guideline table");
    RoleGuideline guideline;
    guideline.role = role;
    guideline.word_range = range_from(entry, "word_range", where);
    guideline.fk_range = range_from(entry, "fk_range", where);
    guideline.density_range = range_from(entry, "density_range", where);
    guideline.advisory = require_string(entry, "advisory", where);
    guideline.published = require_string(entry, "origin", where) == "published";
    if (guideline.density_range.min < 0 || guideline.density_range.max > 100) {
      invalid(where + ": density_range must lie in [0, 100]");
    }
    table.roles.emplace(role, std::move(guideline));
  }
  return table;
}

StopwordList parse_stopword_list(std::string_view text) {
  StopwordList list;
  list.hash = fnv1a_hex(text);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kTag = "version ";
      auto pos = line.find(kTag);
      if (list.version.empty() && pos != std::string::npos) {
        list.version = line.substr(pos + kTag.size());
        while (!list.version.empty() && (list.version.back() == '.' || list.version.back() == ' ')) {
          list.version.pop_back();
        }
      }
      continue;
    }
    for (char& c : line) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    list.words.insert(line);
  }
  if (list.words.empty()) invalid("stopword list is empty");
  if (list.version.empty()) list.version = "unversioned";
  return list;
}

FewShotBank parse_few_shot_bank(std::string_view text) {
  const json root = parse_json(text, "few-shot bank");
  FewShotBank bank;
  bank.version = require_string(root, "version", "few-shot bank");
  bank.hash = fnv1a_hex(text);
  const json& roles = require_object(root, "roles", "few-shot bank");
  for (TextRole role : kAllRoles) {
    const std::string name(to_string(role));
    const std::string where = "few-shot '" + name + "'";
    const json& entry = require_object(roles, name.c_str(), "few-shot bank");
    RolePrompts prompts;
    prompts.instruction = require_string(entry, "instruction", where);
    prompts.summary_instruction = require_string(entry, "summary_instruction", where);
    auto examples = entry.find("examples");
    if (examples == entry.end() || !examples->is_array() || examples->empty()) {
      invalid(where + ": 'examples' must be a non-empty array");
    }
    for (const auto& example : *examples) {
      if (!example.is_string()) invalid(where + ": examples must be strings");
      prompts.examples.push_back(example.get<std::string>());
    }
    bank.roles.emplace(role, std::move(prompts));
  }
  const json& refinements = require_object(root, "refinements", "few-shot bank");
  bank.shorten_instruction = require_string(refinements, "shorten", "refinements");
  bank.simplify_instruction = require_string(refinements, "simplify", "refinements");
  return bank;
}

const RuleTable& default_rule_table() {
  static const RuleTable table = parse_rule_table(embedded::rules_json());
  return table;
}

const GuidelineTable& default_guideline_table() {
  static const GuidelineTable table = parse_guideline_table(embedded::guidelines_json());
  return table;
}

const StopwordList& default_stopword_list() {
  static const StopwordList list = parse_stopword_list(embedded::stopwords_txt());
  return list;
}

const FewShotBank& default_few_shot_bank() {
  static const FewShotBank bank = parse_few_shot_bank(embedded::few_shot_json());
  return bank;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_data_file, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

DataTables DataTables::defaults() {
  return {default_rule_table(), default_guideline_table(), default_stopword_list(),
          default_few_shot_bank()};
}

DataTables DataTables::load(const DataPaths& paths) {
  DataTables tables = defaults();
  if (paths.rules) tables.rules = parse_rule_table(read_text_file(*paths.rules));
  if (paths.guidelines) tables.guidelines = parse_guideline_table(read_text_file(*paths.guidelines));
  if (paths.stopwords) tables.stopwords = parse_stopword_list(read_text_file(*paths.stopwords));
  if (paths.few_shot) tables.few_shot = parse_few_shot_bank(read_text_file(*paths.few_shot));
  return tables;
}

}  // namespace dashtext
