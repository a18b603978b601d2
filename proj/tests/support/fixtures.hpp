#pragma once

// Shared test fixtures, random document generators and independent oracles.
// Nothing in here calls into the scope engine or the generation module, so
// the oracles stay independent of the code paths they check.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dashtext/document.hpp"
#include "dashtext/types.hpp"

namespace dashtext::testing {

inline std::string line_chart_spec(const std::string& field = "precipitation") {
  return R"({"$schema":"https://vega.github.io/schema/vega-lite/v5.json",)"
         R"("data":{"url":"data/seattle-weather.csv"},"mark":"line",)"
         R"("encoding":{"x":{"field":"date","timeUnit":"month","type":"temporal"},)"
         R"("y":{"aggregate":"mean","field":")" +
         field + R"(","type":"quantitative"}}})";
}

inline std::string interactive_bar_spec() {
  return R"({"data":{"url":"data/weather.csv"},"mark":"bar",)"
         R"("params":[{"name":"pick","select":{"type":"point","fields":["city"]}}],)"
         R"("encoding":{"x":{"field":"city","type":"nominal"},)"
         R"("y":{"aggregate":"mean","field":"wind","type":"quantitative"}}})";
}

inline std::string small_svg(const std::string& label = "chart") {
  return R"(<svg xmlns="http://www.w3.org/2000/svg" width="200" height="100">)"
         R"(<g class="mark-line"><path d="M0,50L100,20L200,70"/></g>)"
         R"(<text x="4" y="12">)" + label + "</text></svg>";
}

/// Root with `leaves` side-by-side chart frames.
struct FlatDashboard {
  DashboardDocument doc;
  std::vector<FrameId> leaves;
  std::vector<ChartId> charts;
};

inline FlatDashboard flat_dashboard(int leaves = 2) {
  FlatDashboard out{create_document("doc-flat", {0, 0, 1200, 900}), {}, {}};
  const double width = 1200.0 / leaves;
  for (int i = 0; i < leaves; ++i) {
    FrameId leaf = add_frame(out.doc, out.doc.root, {i * width, 100, width, 600});
    out.charts.push_back(add_chart(out.doc, leaf, line_chart_spec("field" + std::to_string(i)),
                                   small_svg("c" + std::to_string(i))));
    out.leaves.push_back(leaf);
  }
  return out;
}

/// Root > section A (two chart leaves) + sibling leaf B with its own chart.
struct SectionDashboard {
  DashboardDocument doc;
  FrameId section;
  FrameId leaf1;
  FrameId leaf2;
  FrameId sibling;
  ChartId chart1;
  ChartId chart2;
  ChartId chart3;
};

inline SectionDashboard section_dashboard() {
  SectionDashboard d;
  d.doc = create_document("doc-section", {0, 0, 1200, 900});
  d.section = add_frame(d.doc, d.doc.root, {0, 100, 800, 700});
  d.sibling = add_frame(d.doc, d.doc.root, {800, 100, 400, 700});
  d.leaf1 = add_frame(d.doc, d.section, {0, 100, 400, 600});
  d.leaf2 = add_frame(d.doc, d.section, {400, 100, 400, 600});
  d.chart1 = add_chart(d.doc, d.leaf1, line_chart_spec("wind"), small_svg("wind"));
  d.chart2 = add_chart(d.doc, d.leaf2, line_chart_spec("precipitation"), small_svg("rain"));
  d.chart3 = add_chart(d.doc, d.sibling, interactive_bar_spec(), small_svg("temp"));
  return d;
}

// ---------------------------------------------------------------------------
// Random documents

struct RandomDocOptions {
  int max_depth = 6;  // root has depth 0
  int max_frames = 60;
  double chart_probability = 0.6;
  int max_snippets_per_frame = 3;
  double locked_probability = 0.25;
};

inline DashboardDocument random_document(std::mt19937& rng, const RandomDocOptions& options = {}) {
  DashboardDocument doc = create_document("doc-random", {0, 0, 8000, 6000});
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> fanout(0, 4);

  struct Pending {
    FrameId id;
    int depth;
  };
  std::vector<Pending> queue{{doc.root, 0}};
  int frames = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Pending current = queue[head];
    if (current.depth >= options.max_depth) continue;
    int k = fanout(rng);
    k = std::min(k, options.max_frames - frames);
    if (k <= 0) continue;
    const Rect parent = doc.frames.at(current.id).geometry;
    const bool columns = unit(rng) < 0.5;
    std::vector<int> slots(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) slots[static_cast<std::size_t>(i)] = i;
    std::shuffle(slots.begin(), slots.end(), rng);
    for (int i : slots) {
      Rect r;
      if (columns) {
        const double w = parent.width / k;
        r = {i * w, 0.0, w, parent.height};
      } else {
        const double h = parent.height / k;
        r = {0.0, i * h, parent.width, h};
      }
      queue.push_back({add_frame(doc, current.id, r), current.depth + 1});
      ++frames;
    }
  }
  std::uniform_int_distribution<int> snippet_count(0, options.max_snippets_per_frame);
  std::uniform_int_distribution<int> role_pick(0, 6);
  std::uniform_int_distribution<int> state_pick(0, 2);
  std::vector<FrameId> ids;
  for (const auto& [id, frame] : doc.frames) ids.push_back(id);
  for (const auto& id : ids) {
    if (unit(rng) < options.chart_probability) {
      add_chart(doc, id, line_chart_spec(), small_svg());
    }
    const int n = snippet_count(rng);
    for (int i = 0; i < n; ++i) {
      const TextRole role = kAllRoles[static_cast<std::size_t>(role_pick(rng))];
      const int state = state_pick(rng);
      if (state == 0) {
        add_snippet(doc, id, role, std::string(placeholder_text(role)), SnippetState::placeholder);
      } else {
        const std::string text = std::string(to_string(role)) + " text in " + id + " #" + std::to_string(i);
        SnippetId s = add_snippet(doc, id, role, text, SnippetState::generated);
        if (unit(rng) < options.locked_probability) set_locked(doc, s, true);
      }
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Oracles

// Depth by walking raw parent links.
inline int oracle_depth(const DashboardDocument& doc, const FrameId& frame) {
  int depth = 0;
  for (auto p = doc.frames.at(frame).parent; p; p = doc.frames.at(*p).parent) ++depth;
  return depth;
}

inline bool oracle_is_proper_ancestor(const DashboardDocument& doc, const FrameId& ancestor,
                                      const FrameId& frame) {
  for (auto p = doc.frames.at(frame).parent; p; p = doc.frames.at(*p).parent) {
    if (*p == ancestor) return true;
  }
  return false;
}

inline void oracle_preorder(const DashboardDocument& doc, const FrameId& frame,
                            std::vector<FrameId>& out) {
  out.push_back(frame);
  for (const auto& child : doc.frames.at(frame).children) oracle_preorder(doc, child, out);
}

// Every frame at or below `frame`, by recursion.
inline std::set<FrameId> oracle_descendant_closure(const DashboardDocument& doc, const FrameId& frame) {
  std::vector<FrameId> order;
  oracle_preorder(doc, frame, order);
  return {order.begin(), order.end()};
}

inline std::set<ChartId> oracle_subtree_charts(const DashboardDocument& doc, const FrameId& frame) {
  std::set<ChartId> out;
  for (const auto& f : oracle_descendant_closure(doc, frame)) {
    for (const auto& c : doc.frames.at(f).chart_ids) out.insert(c);
  }
  return out;
}

// Expected plan order: non-locked targets stably sorted deepest-first, with
// pre-order frame position and in-frame position as tie-breaks.
inline std::vector<SnippetId> oracle_depth_sort(const DashboardDocument& doc,
                                                const std::set<SnippetId>& targets) {
  std::vector<FrameId> preorder;
  oracle_preorder(doc, doc.root, preorder);
  struct Key {
    int depth;
    std::size_t frame_pos;
    std::size_t snippet_pos;
    SnippetId id;
  };
  std::vector<Key> keys;
  for (std::size_t f = 0; f < preorder.size(); ++f) {
    const auto& ids = doc.frames.at(preorder[f]).snippet_ids;
    for (std::size_t s = 0; s < ids.size(); ++s) {
      if (!targets.contains(ids[s])) continue;
      if (doc.snippets.at(ids[s]).state == SnippetState::locked) continue;
      keys.push_back({oracle_depth(doc, preorder[f]), f, s, ids[s]});
    }
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.depth != b.depth) return a.depth > b.depth;
    if (a.frame_pos != b.frame_pos) return a.frame_pos < b.frame_pos;
    return a.snippet_pos < b.snippet_pos;
  });
  std::vector<SnippetId> out;
  for (const auto& k : keys) out.push_back(k.id);
  return out;
}

// Precedence check: no snippet appears after a snippet in one of its frame's
// proper ancestors.
inline bool oracle_ancestors_after_descendants(const DashboardDocument& doc,
                                               const std::vector<SnippetId>& order) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const FrameId& earlier = doc.snippets.at(order[i]).frame;
      const FrameId& later = doc.snippets.at(order[j]).frame;
      if (oracle_is_proper_ancestor(doc, earlier, later)) return false;
    }
  }
  return true;
}

inline std::map<SnippetId, std::string> locked_contents(const DashboardDocument& doc) {
  std::map<SnippetId, std::string> out;
  for (const auto& [id, s] : doc.snippets) {
    if (s.state == SnippetState::locked) out[id] = s.content;
  }
  return out;
}

}  // namespace dashtext::testing
