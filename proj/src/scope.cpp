#include "dashtext/scope.hpp"

#include <algorithm>

#include "dashtext/document.hpp"
#include "dashtext/error.hpp"

namespace dashtext {

std::string_view to_string(ScopeKind kind) noexcept {
  switch (kind) {
    case ScopeKind::single_chart: return "single_chart";
    case ScopeKind::chart_group: return "chart_group";
    case ScopeKind::whole_dashboard: return "whole_dashboard";
  }
  return "?";
}

bool RoleCompatibility::accepts(TextRole target, TextRole source) const {
  auto it = sources.find(target);
  if (it == sources.end()) return false;
  return std::find(it->second.begin(), it->second.end(), source) != it->second.end();
}

RoleCompatibility default_role_compatibility() {
  RoleCompatibility table;
  table.sources[TextRole::label] = {TextRole::label};
  table.sources[TextRole::insight] = {TextRole::insight, TextRole::annotation};
  table.sources[TextRole::context] = {TextRole::label, TextRole::insight};
  return table;
}

std::vector<FrameId> subtree_frames(const DashboardDocument& doc, const FrameId& frame) {
  get_frame(doc, frame);
  std::vector<FrameId> out;
  std::vector<FrameId> stack{frame};
  while (!stack.empty()) {
    FrameId id = std::move(stack.back());
    stack.pop_back();
    const Frame& current = doc.frames.at(id);
    for (auto it = current.children.rbegin(); it != current.children.rend(); ++it) {
      stack.push_back(*it);
    }
    out.push_back(std::move(id));
  }
  return out;
}

std::vector<ChartId> subtree_charts(const DashboardDocument& doc, const FrameId& frame) {
  std::vector<ChartId> out;
  for (const auto& id : subtree_frames(doc, frame)) {
    const auto& charts = doc.frames.at(id).chart_ids;
    out.insert(out.end(), charts.begin(), charts.end());
  }
  return out;
}

Scope scope_of(const DashboardDocument& doc, const SnippetId& snippet_id) {
  const TextSnippet& snippet = get_snippet(doc, snippet_id);
  Scope scope;
  scope.covered_chart_ids = subtree_charts(doc, snippet.frame);
  if (snippet.frame == doc.root) {
    scope.kind = ScopeKind::whole_dashboard;
  } else if (scope.covered_chart_ids.size() == 1) {
    scope.kind = ScopeKind::single_chart;
  } else {
    scope.kind = ScopeKind::chart_group;
  }
  return scope;
}

std::vector<FrameId> highlight_set(const DashboardDocument& doc, const SnippetId& snippet) {
  return subtree_frames(doc, get_snippet(doc, snippet).frame);
}

std::vector<DownstreamText> downstream_text(const DashboardDocument& doc, const FrameId& frame,
                                            TextRole role,
                                            const RoleCompatibility& compatibility) {
  std::vector<DownstreamText> out;
  const auto frames = subtree_frames(doc, frame);
  for (auto it = frames.begin() + 1; it != frames.end(); ++it) {
    for (const auto& id : doc.frames.at(*it).snippet_ids) {
      const TextSnippet& snippet = doc.snippets.at(id);
      if (snippet.state == SnippetState::placeholder) continue;
      if (!compatibility.accepts(role, snippet.role)) continue;
      out.push_back({id, snippet.role, snippet.content});
    }
  }
  return out;
}

GenerationPlan generation_plan(const DashboardDocument& doc, const std::set<SnippetId>& targets) {
  for (const auto& id : targets) get_snippet(doc, id);

  std::map<int, std::vector<SnippetId>, std::greater<>> by_depth;
  for (const auto& frame : frames_in_reading_order(doc)) {
    const auto& ids = doc.frames.at(frame).snippet_ids;
    int depth = -1;
    for (const auto& id : ids) {
      if (!targets.contains(id)) continue;
      if (doc.snippets.at(id).state == SnippetState::locked) continue;
      if (depth < 0) depth = frame_depth(doc, frame);
      by_depth[depth].push_back(id);
    }
  }
  GenerationPlan plan;
  for (auto& [depth, ids] : by_depth) {
    plan.order.insert(plan.order.end(), ids.begin(), ids.end());
    plan.levels.push_back(std::move(ids));
  }
  return plan;
}

}  // namespace dashtext
