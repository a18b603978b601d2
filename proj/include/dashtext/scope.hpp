#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dashtext/types.hpp"

namespace dashtext {

enum class ScopeKind { single_chart, chart_group, whole_dashboard };

std::string_view to_string(ScopeKind kind) noexcept;

struct Scope {
  ScopeKind kind = ScopeKind::chart_group;
  std::vector<ChartId> covered_chart_ids;  // reading order, unique

  friend bool operator==(const Scope&, const Scope&) = default;
};

// Which descendant roles an ancestor snippet of a given role may summarize.
struct RoleCompatibility {
  std::map<TextRole, std::vector<TextRole>> sources;

  bool accepts(TextRole target, TextRole source) const;
};

RoleCompatibility default_role_compatibility();

struct DownstreamText {
  SnippetId snippet;
  TextRole role = TextRole::label;
  std::string content;

  friend bool operator==(const DownstreamText&, const DownstreamText&) = default;
};

/// Snippet ids to generate, deepest frames first. `levels` partitions `order`
/// by frame depth; inside a level the ids follow document reading order.
struct GenerationPlan {
  std::vector<SnippetId> order;
  std::vector<std::vector<SnippetId>> levels;

  bool empty() const { return order.empty(); }
};

// The frame and all of its descendants, in reading order.
std::vector<FrameId> subtree_frames(const DashboardDocument& doc, const FrameId& frame);
std::vector<ChartId> subtree_charts(const DashboardDocument& doc, const FrameId& frame);

Scope scope_of(const DashboardDocument& doc, const SnippetId& snippet);

// Frames whose content feeds the snippet: its own frame plus descendants.
std::vector<FrameId> highlight_set(const DashboardDocument& doc, const SnippetId& snippet);

// Non-placeholder snippets of compatible role in proper descendants of frame.
std::vector<DownstreamText> downstream_text(const DashboardDocument& doc, const FrameId& frame,
                                            TextRole role,
                                            const RoleCompatibility& compatibility);

// Locked targets are dropped silently; unknown ids throw unknown-snippet.
GenerationPlan generation_plan(const DashboardDocument& doc, const std::set<SnippetId>& targets);

}  // namespace dashtext
