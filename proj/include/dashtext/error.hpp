#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dashtext {

// Machine-readable failure codes shared by the engine, the HTTP problem
// responses and the CLI's stderr output.
enum class ErrorCode {
  unknown_parent,
  unknown_frame,
  unknown_chart,
  unknown_snippet,
  unknown_suggestion,
  unknown_document,
  geometry_out_of_bounds,
  sibling_overlap,
  malformed_spec,
  malformed_svg,
  frame_has_chart,
  inconsistent_state,
  empty_content,
  cannot_lock_placeholder,
  cycle_would_form,
  cannot_move_root,
  unknown_schema_version,
  malformed_document,
  invariant_violation,
  already_resolved,
  advisory_not_acceptable,
  empty_text,
  placeholder_not_analyzable,
  placeholder_not_refinable,
  snippet_locked,
  missing_required_context,
  generation_failed,
  port_unreachable,
  invalid_data_file,
  invalid_config,
  revision_conflict,
  bad_request,
};

std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return dashtext::code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace dashtext
