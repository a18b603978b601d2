#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dashtext/data_tables.hpp"
#include "dashtext/document.hpp"
#include "dashtext/types.hpp"

namespace dashtext {

struct Suggestion {
  SuggestionId id;
  std::optional<TextRole> role;          // set for role suggestions
  std::optional<AdvisoryKind> advisory;  // set for advisories
  std::string title;
  std::string description;
  SuggestionStatus status = SuggestionStatus::pending;

  bool is_advisory() const { return advisory.has_value(); }
};

// Every suggestion in sidebar order, whatever its status.
std::vector<Suggestion> all_suggestions(const DashboardDocument& doc, const RuleTable& rules);
std::vector<Suggestion> pending_suggestions(const DashboardDocument& doc, const RuleTable& rules);

// Frames a rule places text into, in reading order (before the skip-if-present check).
std::vector<FrameId> placement_frames(const DashboardDocument& doc, const PlacementRule& rule);

// Inserts placeholders into every target frame that has no snippet of the
// role yet and marks the suggestion accepted. Returns the new snippet ids.
std::vector<SnippetId> accept_suggestion(DashboardDocument& doc, const SuggestionId& id,
                                         const RuleTable& rules);
void dismiss_suggestion(DashboardDocument& doc, const SuggestionId& id);

// accept_suggestion over every pending role suggestion, in sidebar order.
std::vector<SnippetId> accept_all(DashboardDocument& doc, const RuleTable& rules);

Styling default_styling(const RuleTable& rules, TextRole role, bool at_root);

}  // namespace dashtext
