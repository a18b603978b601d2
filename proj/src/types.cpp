#include "dashtext/types.hpp"

#include <utility>

#include "dashtext/error.hpp"

namespace dashtext {
namespace {

template <typename Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<TextRole, 7> kRoleNames{{
    {TextRole::label, "label"},
    {TextRole::insight, "insight"},
    {TextRole::context, "context"},
    {TextRole::encoding, "encoding"},
    {TextRole::interaction, "interaction"},
    {TextRole::metadata, "metadata"},
    {TextRole::annotation, "annotation"},
}};

constexpr NameTable<SnippetState, 3> kStateNames{{
    {SnippetState::placeholder, "placeholder"},
    {SnippetState::generated, "generated"},
    {SnippetState::locked, "locked"},
}};

constexpr NameTable<FormatClass, 6> kFormatNames{{
    {FormatClass::heading_large, "heading_large"},
    {FormatClass::heading_section, "heading_section"},
    {FormatClass::body, "body"},
    {FormatClass::note, "note"},
    {FormatClass::footnote, "footnote"},
    {FormatClass::overlay_annotation, "overlay_annotation"},
}};

constexpr NameTable<Prominence, 3> kProminenceNames{{
    {Prominence::high, "high"},
    {Prominence::medium, "medium"},
    {Prominence::low, "low"},
}};

constexpr NameTable<CreatedBy, 3> kCreatedByNames{{
    {CreatedBy::user, "user"},
    {CreatedBy::suggestion, "suggestion"},
    {CreatedBy::generation, "generation"},
}};

constexpr NameTable<AdvisoryKind, 3> kAdvisoryNames{{
    {AdvisoryKind::readability, "readability"},
    {AdvisoryKind::reading_order, "reading_order"},
    {AdvisoryKind::formatting, "formatting"},
}};

constexpr NameTable<SuggestionStatus, 3> kStatusNames{{
    {SuggestionStatus::pending, "pending"},
    {SuggestionStatus::accepted, "accepted"},
    {SuggestionStatus::dismissed, "dismissed"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const NameTable<Enum, N>& table, Enum value) noexcept {
  for (const auto& [key, name] : table) {
    if (key == value) return name;
  }
  return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> value_of(const NameTable<Enum, N>& table, std::string_view name) noexcept {
  for (const auto& [key, entry] : table) {
    if (entry == name) return key;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(TextRole role) noexcept { return name_of(kRoleNames, role); }
std::string_view to_string(SnippetState state) noexcept { return name_of(kStateNames, state); }
std::string_view to_string(FormatClass format) noexcept { return name_of(kFormatNames, format); }
std::string_view to_string(Prominence p) noexcept { return name_of(kProminenceNames, p); }
std::string_view to_string(CreatedBy c) noexcept { return name_of(kCreatedByNames, c); }
std::string_view to_string(AdvisoryKind kind) noexcept { return name_of(kAdvisoryNames, kind); }
std::string_view to_string(SuggestionStatus s) noexcept { return name_of(kStatusNames, s); }

std::optional<TextRole> parse_role(std::string_view name) noexcept {
  return value_of(kRoleNames, name);
}
std::optional<SnippetState> parse_state(std::string_view name) noexcept {
  return value_of(kStateNames, name);
}
std::optional<FormatClass> parse_format_class(std::string_view name) noexcept {
  return value_of(kFormatNames, name);
}
std::optional<Prominence> parse_prominence(std::string_view name) noexcept {
  return value_of(kProminenceNames, name);
}
std::optional<CreatedBy> parse_created_by(std::string_view name) noexcept {
  return value_of(kCreatedByNames, name);
}
std::optional<AdvisoryKind> parse_advisory(std::string_view name) noexcept {
  return value_of(kAdvisoryNames, name);
}
std::optional<SuggestionStatus> parse_suggestion_status(std::string_view name) noexcept {
  return value_of(kStatusNames, name);
}

int role_rank(TextRole role) noexcept {
  switch (role) {
    case TextRole::label: return 0;
    case TextRole::context: return 1;
    case TextRole::annotation:
    case TextRole::insight: return 2;
    case TextRole::encoding: return 3;
    case TextRole::interaction: return 4;
    case TextRole::metadata: return 5;
  }
  return 5;
}

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::unknown_parent: return "unknown-parent";
    case ErrorCode::unknown_frame: return "unknown-frame";
    case ErrorCode::unknown_chart: return "unknown-chart";
    case ErrorCode::unknown_snippet: return "unknown-snippet";
    case ErrorCode::unknown_suggestion: return "unknown-suggestion";
    case ErrorCode::unknown_document: return "unknown-document";
    case ErrorCode::geometry_out_of_bounds: return "geometry-out-of-bounds";
    case ErrorCode::sibling_overlap: return "sibling-overlap";
    case ErrorCode::malformed_spec: return "malformed-spec";
    case ErrorCode::malformed_svg: return "malformed-svg";
    case ErrorCode::frame_has_chart: return "frame-has-chart";
    case ErrorCode::inconsistent_state: return "inconsistent-state";
    case ErrorCode::empty_content: return "empty-content";
    case ErrorCode::cannot_lock_placeholder: return "cannot-lock-placeholder";
    case ErrorCode::cycle_would_form: return "cycle-would-form";
    case ErrorCode::cannot_move_root: return "cannot-move-root";
    case ErrorCode::unknown_schema_version: return "unknown-schema-version";
    case ErrorCode::malformed_document: return "malformed-document";
    case ErrorCode::invariant_violation: return "invariant-violation";
    case ErrorCode::already_resolved: return "already-resolved";
    case ErrorCode::advisory_not_acceptable: return "advisory-not-acceptable";
    case ErrorCode::empty_text: return "empty-text";
    case ErrorCode::placeholder_not_analyzable: return "placeholder-not-analyzable";
    case ErrorCode::placeholder_not_refinable: return "placeholder-not-refinable";
    case ErrorCode::snippet_locked: return "snippet-locked";
    case ErrorCode::missing_required_context: return "missing-required-context";
    case ErrorCode::generation_failed: return "generation-failed";
    case ErrorCode::port_unreachable: return "port-unreachable";
    case ErrorCode::invalid_data_file: return "invalid-data-file";
    case ErrorCode::invalid_config: return "invalid-config";
    case ErrorCode::revision_conflict: return "revision-conflict";
    case ErrorCode::bad_request: return "bad-request";
  }
  return "unknown-error";
}

}  // namespace dashtext
