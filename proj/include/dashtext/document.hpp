#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dashtext/error.hpp"
#include "dashtext/types.hpp"

namespace dashtext {

inline constexpr Rect kDefaultRootGeometry{0.0, 0.0, 1200.0, 900.0};

// Fresh document: one empty root frame and every suggestion pending. An empty
// id draws a random one.
DashboardDocument create_document(std::string id = {}, Rect root_geometry = kDefaultRootGeometry);

FrameId add_frame(DashboardDocument& doc, const FrameId& parent, Rect geometry);

// Frames hold at most one chart; nesting expresses groups.
ChartId add_chart(DashboardDocument& doc, const FrameId& frame, std::string_view spec_text,
                  std::string rendered_svg, std::optional<std::string> title_hint = std::nullopt);
ChartId add_chart_spec(DashboardDocument& doc, const FrameId& frame, nlohmann::json spec,
                       std::string rendered_svg, std::optional<std::string> title_hint = std::nullopt);

// Inserted at the role's rank position inside the frame. Without an explicit
// styling the role default is used.
SnippetId add_snippet(DashboardDocument& doc, const FrameId& frame, TextRole role,
                      std::string content, SnippetState state,
                      std::optional<Styling> styling = std::nullopt,
                      CreatedBy created_by = CreatedBy::user);

// A manual edit always locks the snippet.
void edit_snippet(DashboardDocument& doc, const SnippetId& snippet, std::string new_content);
void set_locked(DashboardDocument& doc, const SnippetId& snippet, bool locked);
void set_styling(DashboardDocument& doc, const SnippetId& snippet, Styling styling);
void set_role(DashboardDocument& doc, const SnippetId& snippet, TextRole role);
void set_facts(DashboardDocument& doc, const SnippetId& snippet,
               std::map<std::string, std::string> facts);
void remove_snippet(DashboardDocument& doc, const SnippetId& snippet);

// Re-parent (or just re-position when new_parent is the current parent).
void move_frame(DashboardDocument& doc, const FrameId& frame, const FrameId& new_parent,
                Rect geometry);

// Writes generation output. Only placeholder and generated snippets accept it.
void apply_generated_text(DashboardDocument& doc, const SnippetId& snippet, std::string content);

std::string_view placeholder_text(TextRole role) noexcept;
Styling fallback_styling(TextRole role, bool at_root) noexcept;

// Throws invariant_violation describing the first broken invariant.
void validate(const DashboardDocument& doc);

// True when a precedes b: top-to-bottom, then left-to-right.
bool reading_order_less(const Rect& a, const Rect& b) noexcept;

// Pre-order traversal from the root with children in reading order.
std::vector<FrameId> frames_in_reading_order(const DashboardDocument& doc);
// Every snippet, frame by frame in reading order.
std::vector<SnippetId> snippets_in_reading_order(const DashboardDocument& doc);

int frame_depth(const DashboardDocument& doc, const FrameId& frame);
bool is_descendant(const DashboardDocument& doc, const FrameId& frame, const FrameId& ancestor);
// Slash-joined frame ids from the root down to frame.
std::string frame_path(const DashboardDocument& doc, const FrameId& frame);

const Frame& get_frame(const DashboardDocument& doc, const FrameId& frame);
const TextSnippet& get_snippet(const DashboardDocument& doc, const SnippetId& snippet);

// Equality that ignores the document id.
bool structurally_equal(const DashboardDocument& a, const DashboardDocument& b);

}  // namespace dashtext
