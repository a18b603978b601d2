#include "dashtext/suggestions.hpp"

#include <algorithm>

#include "dashtext/error.hpp"

namespace dashtext {
namespace {

SuggestionEntry& entry_ref(DashboardDocument& doc, const SuggestionId& id) {
  auto it = std::find_if(doc.suggestions.begin(), doc.suggestions.end(),
                         [&](const SuggestionEntry& e) { return e.id == id; });
  if (it == doc.suggestions.end()) {
    throw Error(ErrorCode::unknown_suggestion, "no suggestion '" + id + "'");
  }
  return *it;
}

bool frame_has_role(const DashboardDocument& doc, const Frame& frame, TextRole role) {
  return std::any_of(frame.snippet_ids.begin(), frame.snippet_ids.end(),
                     [&](const SnippetId& id) { return doc.snippets.at(id).role == role; });
}

Suggestion describe(const SuggestionEntry& entry, const RuleTable& rules) {
  Suggestion suggestion;
  suggestion.id = entry.id;
  suggestion.role = parse_role(entry.id);
  suggestion.advisory = parse_advisory(entry.id);
  suggestion.status = entry.status;
  if (auto it = rules.suggestions.find(entry.id); it != rules.suggestions.end()) {
    suggestion.title = it->second.title;
    suggestion.description = it->second.description;
  }
  return suggestion;
}

}  // namespace

std::vector<Suggestion> all_suggestions(const DashboardDocument& doc, const RuleTable& rules) {
  std::vector<Suggestion> out;
  for (const auto& entry : doc.suggestions) out.push_back(describe(entry, rules));
  return out;
}

std::vector<Suggestion> pending_suggestions(const DashboardDocument& doc, const RuleTable& rules) {
  std::vector<Suggestion> out;
  for (const auto& entry : doc.suggestions) {
    if (entry.status == SuggestionStatus::pending) out.push_back(describe(entry, rules));
  }
  return out;
}

std::vector<FrameId> placement_frames(const DashboardDocument& doc, const PlacementRule& rule) {
  std::vector<FrameId> out;
  for (const auto& id : frames_in_reading_order(doc)) {
    const Frame& frame = doc.frames.at(id);
    bool match = false;
    switch (rule.target) {
      case PlacementTarget::root_once: match = id == doc.root; break;
      case PlacementTarget::every_frame: match = true; break;
      case PlacementTarget::every_section_frame:
        match = id == doc.root || !frame.children.empty();
        break;
      case PlacementTarget::every_leaf_chart_frame: match = !frame.chart_ids.empty(); break;
    }
    if (match) out.push_back(id);
  }
  return out;
}

Styling default_styling(const RuleTable& rules, TextRole role, bool at_root) {
  const PlacementRule& rule = rules.rule(role);
  if (at_root && rule.root_styling) return *rule.root_styling;
  return rule.default_styling;
}

std::vector<SnippetId> accept_suggestion(DashboardDocument& doc, const SuggestionId& id,
                                         const RuleTable& rules) {
  SuggestionEntry& entry = entry_ref(doc, id);
  if (parse_advisory(id)) {
    throw Error(ErrorCode::advisory_not_acceptable,
                "advisory '" + id + "' can only be dismissed");
  }
  if (entry.status != SuggestionStatus::pending) {
    throw Error(ErrorCode::already_resolved, "suggestion '" + id + "' is already resolved");
  }
  const TextRole role = *parse_role(id);
  const PlacementRule& rule = rules.rule(role);
  std::vector<SnippetId> created;
  for (const auto& frame_id : placement_frames(doc, rule)) {
    if (frame_has_role(doc, doc.frames.at(frame_id), role)) continue;
    created.push_back(add_snippet(doc, frame_id, role, std::string(placeholder_text(role)),
                                  SnippetState::placeholder,
                                  default_styling(rules, role, frame_id == doc.root),
                                  CreatedBy::suggestion));
  }
  entry.status = SuggestionStatus::accepted;
  return created;
}

void dismiss_suggestion(DashboardDocument& doc, const SuggestionId& id) {
  SuggestionEntry& entry = entry_ref(doc, id);
  if (entry.status != SuggestionStatus::pending) {
    throw Error(ErrorCode::already_resolved, "suggestion '" + id + "' is already resolved");
  }
  entry.status = SuggestionStatus::dismissed;
}

std::vector<SnippetId> accept_all(DashboardDocument& doc, const RuleTable& rules) {
  std::vector<SuggestionId> pending;
  for (const auto& entry : doc.suggestions) {
    if (entry.status == SuggestionStatus::pending && parse_role(entry.id)) pending.push_back(entry.id);
  }
  std::vector<SnippetId> created;
  for (const auto& id : pending) {
    auto ids = accept_suggestion(doc, id, rules);
    created.insert(created.end(), ids.begin(), ids.end());
  }
  return created;
}

}  // namespace dashtext
