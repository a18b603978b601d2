#include "dashtext/document.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "dashtext/chart.hpp"

namespace dashtext {
namespace {

constexpr double kGeometryEpsilon = 1e-9;

std::string random_document_id() {
  std::random_device device;
  std::uniform_int_distribution<unsigned> nibble(0, 15);
  std::string id = "doc-";
  for (int i = 0; i < 16; ++i) id.push_back("0123456789abcdef"[nibble(device)]);
  return id;
}

std::string next_id(DashboardDocument& doc, std::string_view prefix) {
  for (;;) {
    std::string id = std::string(prefix) + "-" + std::to_string(doc.next_serial++);
    if (!doc.frames.contains(id) && !doc.charts.contains(id) && !doc.snippets.contains(id)) {
      return id;
    }
  }
}

Frame& frame_ref(DashboardDocument& doc, const FrameId& id, ErrorCode missing) {
  auto it = doc.frames.find(id);
  if (it == doc.frames.end()) throw Error(missing, "no frame '" + id + "'");
  return it->second;
}

TextSnippet& snippet_ref(DashboardDocument& doc, const SnippetId& id) {
  auto it = doc.snippets.find(id);
  if (it == doc.snippets.end()) {
    throw Error(ErrorCode::unknown_snippet, "no snippet '" + id + "'");
  }
  return it->second;
}

bool finite_rect(const Rect& r) {
  return std::isfinite(r.x) && std::isfinite(r.y) && std::isfinite(r.width) &&
         std::isfinite(r.height);
}

bool fits_canvas(const Rect& r) {
  return finite_rect(r) && r.width > 0.0 && r.height > 0.0 && r.x >= 0.0 && r.y >= 0.0 &&
         r.x + r.width <= kCanvasMax + kGeometryEpsilon &&
         r.y + r.height <= kCanvasMax + kGeometryEpsilon;
}

bool contained_in(const Rect& child, const Rect& parent) {
  return fits_canvas(child) && child.x + child.width <= parent.width + kGeometryEpsilon &&
         child.y + child.height <= parent.height + kGeometryEpsilon;
}

// Interiors intersect; shared edges are allowed.
bool overlaps(const Rect& a, const Rect& b) {
  return a.x < b.x + b.width - kGeometryEpsilon && b.x < a.x + a.width - kGeometryEpsilon &&
         a.y < b.y + b.height - kGeometryEpsilon && b.y < a.y + a.height - kGeometryEpsilon;
}

void check_placement(const DashboardDocument& doc, const Frame& parent, const Rect& geometry,
                     const FrameId& ignore) {
  if (!contained_in(geometry, parent.geometry)) {
    throw Error(ErrorCode::geometry_out_of_bounds,
                "geometry does not fit inside frame '" + parent.id + "'");
  }
  for (const auto& sibling : parent.children) {
    if (sibling == ignore) continue;
    if (overlaps(doc.frames.at(sibling).geometry, geometry)) {
      throw Error(ErrorCode::sibling_overlap, "geometry overlaps frame '" + sibling + "'");
    }
  }
}

void insert_child_in_reading_order(DashboardDocument& doc, Frame& parent, const FrameId& child) {
  const Rect& geometry = doc.frames.at(child).geometry;
  auto pos = std::find_if(parent.children.begin(), parent.children.end(), [&](const FrameId& id) {
    return reading_order_less(geometry, doc.frames.at(id).geometry);
  });
  parent.children.insert(pos, child);
}

void insert_snippet_by_rank(DashboardDocument& doc, Frame& frame, const TextSnippet& snippet) {
  const int rank = role_rank(snippet.role);
  auto pos = std::find_if(frame.snippet_ids.begin(), frame.snippet_ids.end(),
                          [&](const SnippetId& id) { return role_rank(doc.snippets.at(id).role) > rank; });
  frame.snippet_ids.insert(pos, snippet.id);
}

void erase_id(std::vector<std::string>& ids, const std::string& id) {
  ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
}

[[noreturn]] void broken(const std::string& what) {
  throw Error(ErrorCode::invariant_violation, what);
}

}  // namespace

std::string_view placeholder_text(TextRole role) noexcept {
  switch (role) {
    case TextRole::label: return "This would be a good place to label your data";
    case TextRole::insight:
      return "This would be a good place to state a key insight or takeaway from your data";
    case TextRole::context:
      return "This would be a good place to give context: why this dashboard exists and what "
             "question it answers";
    case TextRole::encoding:
      return "This would be a good place to explain how to read the chart's visual encodings";
    case TextRole::interaction:
      return "This would be a good place to explain how to interact with the chart";
    case TextRole::metadata:
      return "This would be a good place to credit the author and data source and to note any "
             "caveats";
    case TextRole::annotation:
      return "This would be a good place to annotate a notable point in the chart";
  }
  return "";
}

Styling fallback_styling(TextRole role, bool at_root) noexcept {
  switch (role) {
    case TextRole::label:
      return {at_root ? FormatClass::heading_large : FormatClass::heading_section, Prominence::high};
    case TextRole::insight: return {FormatClass::body, Prominence::high};
    case TextRole::context: return {FormatClass::body, Prominence::medium};
    case TextRole::encoding:
    case TextRole::interaction: return {FormatClass::note, Prominence::medium};
    case TextRole::metadata: return {FormatClass::footnote, Prominence::low};
    case TextRole::annotation: return {FormatClass::overlay_annotation, Prominence::medium};
  }
  return {};
}

bool reading_order_less(const Rect& a, const Rect& b) noexcept {
  if (a.y != b.y) return a.y < b.y;
  return a.x < b.x;
}

DashboardDocument create_document(std::string id, Rect root_geometry) {
  if (!fits_canvas(root_geometry)) {
    throw Error(ErrorCode::geometry_out_of_bounds, "root geometry outside the canvas");
  }
  DashboardDocument doc;
  doc.id = id.empty() ? random_document_id() : std::move(id);
  Frame root;
  root.id = next_id(doc, "frame");
  root.geometry = root_geometry;
  doc.root = root.id;
  doc.frames.emplace(root.id, std::move(root));
  for (TextRole role : {TextRole::label, TextRole::context, TextRole::insight, TextRole::encoding,
                        TextRole::interaction, TextRole::annotation, TextRole::metadata}) {
    doc.suggestions.push_back({std::string(to_string(role)), SuggestionStatus::pending});
  }
  for (AdvisoryKind kind :
       {AdvisoryKind::readability, AdvisoryKind::reading_order, AdvisoryKind::formatting}) {
    doc.suggestions.push_back({std::string(to_string(kind)), SuggestionStatus::pending});
  }
  return doc;
}

FrameId add_frame(DashboardDocument& doc, const FrameId& parent_id, Rect geometry) {
  Frame& parent = frame_ref(doc, parent_id, ErrorCode::unknown_parent);
  check_placement(doc, parent, geometry, {});
  Frame frame;
  frame.id = next_id(doc, "frame");
  frame.parent = parent_id;
  frame.geometry = geometry;
  const FrameId id = frame.id;
  doc.frames.emplace(id, std::move(frame));
  insert_child_in_reading_order(doc, doc.frames.at(parent_id), id);
  return id;
}

ChartId add_chart(DashboardDocument& doc, const FrameId& frame, std::string_view spec_text,
                  std::string rendered_svg, std::optional<std::string> title_hint) {
  frame_ref(doc, frame, ErrorCode::unknown_frame);
  return add_chart_spec(doc, frame, parse_chart_spec(spec_text), std::move(rendered_svg),
                   std::move(title_hint));
}

ChartId add_chart_spec(DashboardDocument& doc, const FrameId& frame_id, nlohmann::json spec,
                       std::string rendered_svg, std::optional<std::string> title_hint) {
  Frame& frame = frame_ref(doc, frame_id, ErrorCode::unknown_frame);
  if (!spec.is_object()) throw Error(ErrorCode::malformed_spec, "chart spec must be an object");
  if (!rendered_svg.empty() && !is_well_formed_markup(rendered_svg)) {
    throw Error(ErrorCode::malformed_svg, "rendered chart image is not well-formed markup");
  }
  if (!frame.chart_ids.empty()) {
    throw Error(ErrorCode::frame_has_chart,
                "frame '" + frame_id + "' already holds a chart; nest a new frame instead");
  }
  Chart chart;
  chart.id = next_id(doc, "chart");
  chart.spec = std::move(spec);
  chart.rendered_svg = std::move(rendered_svg);
  chart.title_hint = std::move(title_hint);
  const ChartId id = chart.id;
  doc.charts.emplace(id, std::move(chart));
  doc.frames.at(frame_id).chart_ids.push_back(id);
  return id;
}

SnippetId add_snippet(DashboardDocument& doc, const FrameId& frame_id, TextRole role,
                      std::string content, SnippetState state, std::optional<Styling> styling,
                      CreatedBy created_by) {
  frame_ref(doc, frame_id, ErrorCode::unknown_frame);
  if (state == SnippetState::placeholder && content != placeholder_text(role)) {
    throw Error(ErrorCode::inconsistent_state,
                "placeholder content must be the role template for " + std::string(to_string(role)));
  }
  if (state != SnippetState::placeholder && content.empty()) {
    throw Error(ErrorCode::inconsistent_state, "non-placeholder snippets need content");
  }
  TextSnippet snippet;
  snippet.id = next_id(doc, "snippet");
  snippet.frame = frame_id;
  snippet.role = role;
  snippet.state = state;
  snippet.content = std::move(content);
  snippet.styling = styling.value_or(fallback_styling(role, frame_id == doc.root));
  snippet.created_by = created_by;
  const SnippetId id = snippet.id;
  doc.snippets.emplace(id, snippet);
  insert_snippet_by_rank(doc, doc.frames.at(frame_id), snippet);
  return id;
}

void edit_snippet(DashboardDocument& doc, const SnippetId& id, std::string new_content) {
  TextSnippet& snippet = snippet_ref(doc, id);
  if (new_content.empty()) throw Error(ErrorCode::empty_content, "snippet text cannot be empty");
  snippet.content = std::move(new_content);
  snippet.state = SnippetState::locked;
}

void set_locked(DashboardDocument& doc, const SnippetId& id, bool locked) {
  TextSnippet& snippet = snippet_ref(doc, id);
  if (snippet.state == SnippetState::placeholder) {
    throw Error(ErrorCode::cannot_lock_placeholder,
                "placeholder '" + id + "' has no text to lock or unlock");
  }
  snippet.state = locked ? SnippetState::locked : SnippetState::generated;
}

void set_styling(DashboardDocument& doc, const SnippetId& id, Styling styling) {
  snippet_ref(doc, id).styling = styling;
}

void set_role(DashboardDocument& doc, const SnippetId& id, TextRole role) {
  TextSnippet& snippet = snippet_ref(doc, id);
  if (snippet.role == role) return;
  snippet.role = role;
  if (snippet.state == SnippetState::placeholder) snippet.content = placeholder_text(role);
  Frame& frame = doc.frames.at(snippet.frame);
  erase_id(frame.snippet_ids, id);
  insert_snippet_by_rank(doc, frame, snippet);
}

void set_facts(DashboardDocument& doc, const SnippetId& id,
               std::map<std::string, std::string> facts) {
  snippet_ref(doc, id).facts = std::move(facts);
}

void remove_snippet(DashboardDocument& doc, const SnippetId& id) {
  TextSnippet& snippet = snippet_ref(doc, id);
  erase_id(doc.frames.at(snippet.frame).snippet_ids, id);
  doc.snippets.erase(id);
}

void move_frame(DashboardDocument& doc, const FrameId& frame_id, const FrameId& new_parent_id,
                Rect geometry) {
  Frame& frame = frame_ref(doc, frame_id, ErrorCode::unknown_frame);
  if (frame_id == doc.root) throw Error(ErrorCode::cannot_move_root, "the root frame cannot move");
  Frame& new_parent = frame_ref(doc, new_parent_id, ErrorCode::unknown_parent);
  if (new_parent_id == frame_id || is_descendant(doc, new_parent_id, frame_id)) {
    throw Error(ErrorCode::cycle_would_form,
                "frame '" + new_parent_id + "' lies inside '" + frame_id + "'");
  }
  check_placement(doc, new_parent, geometry, frame_id);
  // Children keep their relative geometry, so they must still fit.
  for (const auto& child : frame.children) {
    if (!contained_in(doc.frames.at(child).geometry, geometry)) {
      throw Error(ErrorCode::geometry_out_of_bounds,
                  "child frame '" + child + "' would no longer fit");
    }
  }
  erase_id(doc.frames.at(*frame.parent).children, frame_id);
  frame.parent = new_parent_id;
  frame.geometry = geometry;
  insert_child_in_reading_order(doc, new_parent, frame_id);
}

void apply_generated_text(DashboardDocument& doc, const SnippetId& id, std::string content) {
  TextSnippet& snippet = snippet_ref(doc, id);
  if (snippet.state == SnippetState::locked) {
    throw Error(ErrorCode::snippet_locked, "snippet '" + id + "' is locked");
  }
  if (content.empty()) throw Error(ErrorCode::generation_failed, "generated text is empty");
  snippet.content = std::move(content);
  snippet.state = SnippetState::generated;
}

const Frame& get_frame(const DashboardDocument& doc, const FrameId& id) {
  auto it = doc.frames.find(id);
  if (it == doc.frames.end()) throw Error(ErrorCode::unknown_frame, "no frame '" + id + "'");
  return it->second;
}

const TextSnippet& get_snippet(const DashboardDocument& doc, const SnippetId& id) {
  auto it = doc.snippets.find(id);
  if (it == doc.snippets.end()) throw Error(ErrorCode::unknown_snippet, "no snippet '" + id + "'");
  return it->second;
}

std::vector<FrameId> frames_in_reading_order(const DashboardDocument& doc) {
  std::vector<FrameId> order;
  order.reserve(doc.frames.size());
  std::vector<FrameId> stack{doc.root};
  while (!stack.empty()) {
    FrameId id = std::move(stack.back());
    stack.pop_back();
    const Frame& frame = doc.frames.at(id);
    for (auto it = frame.children.rbegin(); it != frame.children.rend(); ++it) stack.push_back(*it);
    order.push_back(std::move(id));
  }
  return order;
}

std::vector<SnippetId> snippets_in_reading_order(const DashboardDocument& doc) {
  std::vector<SnippetId> order;
  for (const auto& frame : frames_in_reading_order(doc)) {
    const auto& ids = doc.frames.at(frame).snippet_ids;
    order.insert(order.end(), ids.begin(), ids.end());
  }
  return order;
}

int frame_depth(const DashboardDocument& doc, const FrameId& id) {
  int depth = 0;
  const Frame* frame = &get_frame(doc, id);
  while (frame->parent) {
    frame = &doc.frames.at(*frame->parent);
    ++depth;
  }
  return depth;
}

bool is_descendant(const DashboardDocument& doc, const FrameId& id, const FrameId& ancestor) {
  const Frame* frame = &get_frame(doc, id);
  while (frame->parent) {
    if (*frame->parent == ancestor) return true;
    frame = &doc.frames.at(*frame->parent);
  }
  return false;
}

std::string frame_path(const DashboardDocument& doc, const FrameId& id) {
  std::vector<const FrameId*> chain;
  const Frame* frame = &get_frame(doc, id);
  chain.push_back(&frame->id);
  while (frame->parent) {
    frame = &doc.frames.at(*frame->parent);
    chain.push_back(&frame->id);
  }
  std::string path;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (!path.empty()) path += '/';
    path += **it;
  }
  return path;
}

bool structurally_equal(const DashboardDocument& a, const DashboardDocument& b) {
  DashboardDocument a_copy = a;
  a_copy.id = b.id;
  return a_copy == b;
}

void validate(const DashboardDocument& doc) {
  if (doc.schema_version != kSchemaVersion) {
    throw Error(ErrorCode::unknown_schema_version, "unsupported schema '" + doc.schema_version + "'");
  }
  // Tree shape.
  std::vector<FrameId> roots;
  for (const auto& [id, frame] : doc.frames) {
    if (frame.id != id) broken("frame key '" + id + "' does not match its id");
    if (!frame.parent) {
      roots.push_back(id);
      continue;
    }
    auto parent = doc.frames.find(*frame.parent);
    if (parent == doc.frames.end()) broken("frame '" + id + "' has an unknown parent");
    const auto& siblings = parent->second.children;
    if (std::count(siblings.begin(), siblings.end(), id) != 1) {
      broken("frame '" + id + "' is not listed exactly once by its parent");
    }
  }
  if (roots.size() != 1) broken("document must have exactly one root frame");
  if (roots.front() != doc.root) broken("root field does not name the parentless frame");

  std::set<FrameId> seen;
  std::vector<FrameId> stack{doc.root};
  while (!stack.empty()) {
    FrameId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) broken("frame '" + id + "' is reachable twice (cycle)");
    const Frame& frame = doc.frames.at(id);
    for (const auto& child : frame.children) {
      auto it = doc.frames.find(child);
      if (it == doc.frames.end()) broken("frame '" + id + "' lists unknown child '" + child + "'");
      if (it->second.parent != id) broken("child '" + child + "' does not point back to '" + id + "'");
      stack.push_back(child);
    }
  }
  if (seen.size() != doc.frames.size()) broken("some frames are unreachable from the root (cycle)");

  // Geometry.
  const Frame& root = doc.frames.at(doc.root);
  if (!fits_canvas(root.geometry)) broken("root geometry outside the canvas");
  for (const auto& [id, frame] : doc.frames) {
    for (std::size_t i = 0; i < frame.children.size(); ++i) {
      const Rect& child = doc.frames.at(frame.children[i]).geometry;
      if (!contained_in(child, frame.geometry)) {
        broken("frame '" + frame.children[i] + "' exceeds its parent '" + id + "'");
      }
      for (std::size_t j = 0; j < i; ++j) {
        const Rect& other = doc.frames.at(frame.children[j]).geometry;
        if (overlaps(child, other)) {
          broken("frames '" + frame.children[j] + "' and '" + frame.children[i] + "' overlap");
        }
        if (!reading_order_less(other, child)) {
          broken("children of '" + id + "' are not in reading order");
        }
      }
    }
    if (frame.chart_ids.size() > 1) broken("frame '" + id + "' holds more than one chart");
  }

  // Chart and snippet references: each exists and is owned by exactly one frame.
  std::map<std::string, int> chart_refs;
  std::map<std::string, int> snippet_refs;
  for (const auto& [id, frame] : doc.frames) {
    for (const auto& chart : frame.chart_ids) {
      if (!doc.charts.contains(chart)) broken("frame '" + id + "' references unknown chart");
      ++chart_refs[chart];
    }
    for (const auto& snippet : frame.snippet_ids) {
      auto it = doc.snippets.find(snippet);
      if (it == doc.snippets.end()) broken("frame '" + id + "' references unknown snippet");
      if (it->second.frame != id) broken("snippet '" + snippet + "' names a different frame");
      ++snippet_refs[snippet];
    }
  }
  for (const auto& [id, chart] : doc.charts) {
    if (chart.id != id) broken("chart key '" + id + "' does not match its id");
    if (chart_refs[id] != 1) broken("chart '" + id + "' must be referenced by exactly one frame");
    if (!chart.spec.is_object()) broken("chart '" + id + "' spec is not an object");
    if (!chart.rendered_svg.empty() && !is_well_formed_markup(chart.rendered_svg)) {
      broken("chart '" + id + "' image is not well-formed markup");
    }
  }
  for (const auto& [id, snippet] : doc.snippets) {
    if (snippet.id != id) broken("snippet key '" + id + "' does not match its id");
    if (snippet_refs[id] != 1) broken("snippet '" + id + "' must be referenced by exactly one frame");
    if (snippet.state == SnippetState::placeholder && snippet.content != placeholder_text(snippet.role)) {
      broken("placeholder '" + id + "' does not carry its role template");
    }
    if (snippet.state != SnippetState::placeholder && snippet.content.empty()) {
      broken("snippet '" + id + "' has no content");
    }
  }

  std::set<std::string> kinds;
  for (const auto& entry : doc.suggestions) {
    if (!parse_role(entry.id) && !parse_advisory(entry.id)) {
      broken("unknown suggestion '" + entry.id + "'");
    }
    if (!kinds.insert(entry.id).second) broken("duplicate suggestion '" + entry.id + "'");
    if (parse_advisory(entry.id) && entry.status == SuggestionStatus::accepted) {
      broken("advisory '" + entry.id + "' cannot be accepted");
    }
  }
}

}  // namespace dashtext
