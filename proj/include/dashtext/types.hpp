#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dashtext {

using FrameId = std::string;
using ChartId = std::string;
using SnippetId = std::string;
using SuggestionId = std::string;
using DocumentId = std::string;

enum class TextRole { label, insight, context, encoding, interaction, metadata, annotation };

inline constexpr std::array<TextRole, 7> kAllRoles = {
    TextRole::label,       TextRole::insight,  TextRole::context,    TextRole::encoding,
    TextRole::interaction, TextRole::metadata, TextRole::annotation,
};

enum class SnippetState { placeholder, generated, locked };

enum class FormatClass { heading_large, heading_section, body, note, footnote, overlay_annotation };

enum class Prominence { high, medium, low };

enum class CreatedBy { user, suggestion, generation };

enum class AdvisoryKind { readability, reading_order, formatting };

enum class SuggestionStatus { pending, accepted, dismissed };

std::string_view to_string(TextRole role) noexcept;
std::string_view to_string(SnippetState state) noexcept;
std::string_view to_string(FormatClass format) noexcept;
std::string_view to_string(Prominence prominence) noexcept;
std::string_view to_string(CreatedBy created_by) noexcept;
std::string_view to_string(AdvisoryKind kind) noexcept;
std::string_view to_string(SuggestionStatus status) noexcept;

// Parsers return nullopt for names outside the closed set.
std::optional<TextRole> parse_role(std::string_view name) noexcept;
std::optional<SnippetState> parse_state(std::string_view name) noexcept;
std::optional<FormatClass> parse_format_class(std::string_view name) noexcept;
std::optional<Prominence> parse_prominence(std::string_view name) noexcept;
std::optional<CreatedBy> parse_created_by(std::string_view name) noexcept;
std::optional<AdvisoryKind> parse_advisory(std::string_view name) noexcept;
std::optional<SuggestionStatus> parse_suggestion_status(std::string_view name) noexcept;

// Position of a role inside a frame's snippet list: headings first, footnotes last.
int role_rank(TextRole role) noexcept;

/// Axis-aligned rectangle in abstract canvas units, relative to the parent frame.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline constexpr double kCanvasMax = 10000.0;

struct Styling {
  FormatClass format_class = FormatClass::body;
  Prominence prominence = Prominence::medium;

  friend bool operator==(const Styling&, const Styling&) = default;
};

struct Frame {
  FrameId id;
  std::optional<FrameId> parent;
  std::vector<FrameId> children;  // reading order
  Rect geometry;
  std::vector<ChartId> chart_ids;
  std::vector<SnippetId> snippet_ids;  // vertical reading order within the frame

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct Chart {
  ChartId id;
  nlohmann::json spec;
  std::string rendered_svg;
  std::optional<std::string> title_hint;

  friend bool operator==(const Chart&, const Chart&) = default;
};

struct TextSnippet {
  SnippetId id;
  FrameId frame;
  TextRole role = TextRole::label;
  SnippetState state = SnippetState::placeholder;
  std::string content;
  Styling styling;
  CreatedBy created_by = CreatedBy::user;
  // Author-supplied facts (author, source, caveats, ...) that metadata text is
  // written from. Empty for every other role.
  std::map<std::string, std::string> facts;

  friend bool operator==(const TextSnippet&, const TextSnippet&) = default;
};

// Suggestion ids are the role or advisory name, so there is exactly one per kind.
struct SuggestionEntry {
  SuggestionId id;
  SuggestionStatus status = SuggestionStatus::pending;

  friend bool operator==(const SuggestionEntry&, const SuggestionEntry&) = default;
};

inline constexpr std::string_view kSchemaVersion = "plume-doc/1";

struct DashboardDocument {
  std::string schema_version{kSchemaVersion};
  std::string id;
  FrameId root;
  std::map<FrameId, Frame> frames;
  std::map<ChartId, Chart> charts;
  std::map<SnippetId, TextSnippet> snippets;
  std::vector<SuggestionEntry> suggestions;  // sidebar order
  std::uint64_t next_serial = 1;

  friend bool operator==(const DashboardDocument&, const DashboardDocument&) = default;
};

}  // namespace dashtext
