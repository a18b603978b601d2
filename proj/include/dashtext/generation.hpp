#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dashtext/data_tables.hpp"
#include "dashtext/error.hpp"
#include "dashtext/scope.hpp"
#include "dashtext/types.hpp"

namespace dashtext {

enum class ContextKind { chart_spec, chart_svg, downstream_text, locked_text };
std::string_view to_string(ContextKind kind) noexcept;

struct ContextBlock {
  ContextKind kind = ContextKind::chart_spec;
  std::string source;  // chart id or snippet id
  std::string payload;

  friend bool operator==(const ContextBlock&, const ContextBlock&) = default;
};

// generate: write from chart context; summarize: condense downstream text.
enum class PromptTask { generate, summarize, shorten, simplify };
std::string_view to_string(PromptTask task) noexcept;

struct FewShotExample {
  TextRole role = TextRole::label;
  std::string text;

  friend bool operator==(const FewShotExample&, const FewShotExample&) = default;
};

struct PromptBundle {
  SnippetId target;
  TextRole role = TextRole::label;
  std::string frame_path;
  PromptTask task = PromptTask::generate;
  std::string instruction;
  std::vector<FewShotExample> few_shot_examples;
  std::vector<ContextBlock> context_blocks;

  std::size_t count(ContextKind kind) const;
  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

nlohmann::json to_json(const PromptBundle& bundle);
// Compact, key-sorted serialization; the mock port keys its answers on this.
std::string canonical_bundle(const PromptBundle& bundle);
std::string bundle_hash(const PromptBundle& bundle);

struct ChatMessages {
  std::string system;
  std::string user;
};
// Instruction and examples go to the system message, context to the user message.
ChatMessages render_messages(const PromptBundle& bundle);

// Context kinds a role draws from its charts when it has no downstream text.
struct RoleContextTable {
  std::map<TextRole, std::vector<ContextKind>> chart_context;
  RoleCompatibility compatibility;

  bool requires_kind(TextRole role, ContextKind kind) const;
};

RoleContextTable role_context_table(const RuleTable& rules);

struct GenerationConfig {
  std::string model = "gpt-4o";
  double temperature = 0.2;
  std::size_t concurrency = 4;
  std::size_t svg_budget = 20000;
};

class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  // Throws Error (generation-failed, port-unreachable) on failure. Must be safe
  // to call from several threads at once.
  virtual std::string complete(const PromptBundle& bundle, const GenerationConfig& config) = 0;
  virtual bool ready() const { return true; }
};

struct LockedText {
  SnippetId snippet;
  TextRole role = TextRole::label;
  std::string content;

  friend bool operator==(const LockedText&, const LockedText&) = default;
};

// All locked snippets in document reading order.
std::vector<LockedText> collect_locked_text(const DashboardDocument& doc);

PromptBundle assemble_prompt(const DashboardDocument& doc, const SnippetId& snippet,
                             const DataTables& tables, const GenerationConfig& config = {});

struct GenerationOutcome {
  SnippetId snippet;
  std::size_t level = 0;
  bool ok = false;
  std::string content;  // generated text when ok
  std::optional<ErrorCode> error;
  std::string message;
  std::optional<PromptBundle> bundle;  // absent when assembly itself failed
};

struct GenerationReport {
  GenerationPlan plan;
  std::vector<GenerationOutcome> outcomes;  // plan order

  std::size_t generated() const;
  std::size_t failed() const;
};

// Called after each level is written to the document.
using LevelCommitted = std::function<void(const DashboardDocument&, std::size_t level)>;

// Runs the plan deepest level first. Calls inside a level may overlap; their
// results are written together once the level completes. Failures leave the
// snippet untouched and are reported, not thrown.
GenerationReport generate_all(DashboardDocument& doc, const std::set<SnippetId>& targets,
                              TextGenerator& port, const DataTables& tables,
                              const GenerationConfig& config = {},
                              const LevelCommitted& on_level = {});

enum class RefineKind { regenerate, shorten, simplify };
std::string_view to_string(RefineKind kind) noexcept;
std::optional<RefineKind> parse_refine_kind(std::string_view name) noexcept;

PromptBundle refinement_prompt(const DashboardDocument& doc, const SnippetId& snippet,
                               RefineKind kind, const DataTables& tables,
                               const GenerationConfig& config = {});

// Replaces the snippet's text in place; role, frame and styling stay as they are.
std::string refine(DashboardDocument& doc, const SnippetId& snippet, RefineKind kind,
                   TextGenerator& port, const DataTables& tables,
                   const GenerationConfig& config = {});

}  // namespace dashtext
