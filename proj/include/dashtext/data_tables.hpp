#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dashtext/scope.hpp"
#include "dashtext/types.hpp"

namespace dashtext {

// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

enum class PlacementTarget { root_once, every_frame, every_section_frame, every_leaf_chart_frame };
enum class PlacementPosition { top_of_frame, under_each_chart, bottom_of_frame, under_dashboard_title };

std::string_view to_string(PlacementTarget target) noexcept;
std::string_view to_string(PlacementPosition position) noexcept;

struct PlacementRule {
  TextRole role = TextRole::label;
  PlacementTarget target = PlacementTarget::root_once;
  PlacementPosition position = PlacementPosition::top_of_frame;
  Styling default_styling;
  std::optional<Styling> root_styling;  // overrides default_styling in the root frame
};

struct SuggestionText {
  std::string title;
  std::string description;
};

struct RuleTable {
  std::string version;
  std::string hash;
  std::map<TextRole, PlacementRule> rules;
  std::map<std::string, SuggestionText> suggestions;  // keyed by role or advisory name
  RoleCompatibility compatibility;

  const PlacementRule& rule(TextRole role) const { return rules.at(role); }
};

struct Range {
  double min = 0.0;
  double max = 0.0;
};

struct RoleGuideline {
  TextRole role = TextRole::label;
  Range word_range;
  Range fk_range;
  Range density_range;
  std::string advisory;
  bool published = false;  // numbers taken from published guidance rather than local defaults
};

struct GuidelineTable {
  std::string version;
  std::string hash;
  std::map<TextRole, RoleGuideline> roles;

  const RoleGuideline& guideline(TextRole role) const { return roles.at(role); }
};

struct StopwordList {
  std::string version;
  std::string hash;
  std::set<std::string, std::less<>> words;

  // Expects a lowercased token.
  bool contains(std::string_view word) const { return words.find(word) != words.end(); }
};

struct RolePrompts {
  std::string instruction;
  std::string summary_instruction;
  std::vector<std::string> examples;
};

struct FewShotBank {
  std::string version;
  std::string hash;
  std::map<TextRole, RolePrompts> roles;
  std::string shorten_instruction;   // "{role}" is replaced with the role name
  std::string simplify_instruction;

  const RolePrompts& prompts(TextRole role) const { return roles.at(role); }
};

// Parsers validate completeness (all seven roles) and rule-table invariants,
// throwing invalid-data-file.
RuleTable parse_rule_table(std::string_view text);
GuidelineTable parse_guideline_table(std::string_view text);
StopwordList parse_stopword_list(std::string_view text);
FewShotBank parse_few_shot_bank(std::string_view text);

// Copies compiled into the library from data/.
const RuleTable& default_rule_table();
const GuidelineTable& default_guideline_table();
const StopwordList& default_stopword_list();
const FewShotBank& default_few_shot_bank();

std::string read_text_file(const std::filesystem::path& path);

struct DataPaths {
  std::optional<std::filesystem::path> rules;
  std::optional<std::filesystem::path> guidelines;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> few_shot;
};

// Everything the engines read from data files. Unset paths fall back to the
// embedded defaults.
struct DataTables {
  RuleTable rules;
  GuidelineTable guidelines;
  StopwordList stopwords;
  FewShotBank few_shot;

  static DataTables defaults();
  static DataTables load(const DataPaths& paths);
};

namespace embedded {
std::string_view rules_json();
std::string_view guidelines_json();
std::string_view stopwords_txt();
std::string_view few_shot_json();
}  // namespace embedded

}  // namespace dashtext
