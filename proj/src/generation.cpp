#include "dashtext/generation.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "dashtext/chart.hpp"
#include "dashtext/document.hpp"

namespace dashtext {
namespace {

using nlohmann::json;

std::string scope_sentence(const Scope& scope) {
  const std::size_t n = scope.covered_chart_ids.size();
  switch (scope.kind) {
    case ScopeKind::whole_dashboard:
      return "The text speaks for the entire dashboard (" + std::to_string(n) +
             (n == 1 ? " chart)." : " charts).");
    case ScopeKind::single_chart: return "The text describes a single chart.";
    case ScopeKind::chart_group:
      return "The text covers a group of " + std::to_string(n) +
             " charts; summarize or compare them rather than describing one.";
  }
  return {};
}

std::string replace_all(std::string text, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

std::vector<FewShotExample> examples_for(const FewShotBank& bank, TextRole role) {
  std::vector<FewShotExample> out;
  for (const auto& text : bank.prompts(role).examples) out.push_back({role, text});
  return out;
}

void append_locked_blocks(PromptBundle& bundle, const DashboardDocument& doc,
                          const SnippetId& target) {
  for (const auto& locked : collect_locked_text(doc)) {
    if (locked.snippet == target) continue;
    const bool already_downstream =
        std::any_of(bundle.context_blocks.begin(), bundle.context_blocks.end(), [&](const ContextBlock& b) {
          return b.kind == ContextKind::downstream_text && b.source == locked.snippet;
        });
    if (already_downstream) continue;
    bundle.context_blocks.push_back({ContextKind::locked_text, locked.snippet, locked.content});
  }
}

const std::string kLockedNote =
    "Some text was written or locked in by the author. Keep your text consistent with its "
    "communication goal and tone, and do not contradict it.";

}  // namespace

std::string_view to_string(ContextKind kind) noexcept {
  switch (kind) {
    case ContextKind::chart_spec: return "chart_spec";
    case ContextKind::chart_svg: return "chart_svg";
    case ContextKind::downstream_text: return "downstream_text";
    case ContextKind::locked_text: return "locked_text";
  }
  return "?";
}

std::string_view to_string(PromptTask task) noexcept {
  switch (task) {
    case PromptTask::generate: return "generate";
    case PromptTask::summarize: return "summarize";
    case PromptTask::shorten: return "shorten";
    case PromptTask::simplify: return "simplify";
  }
  return "?";
}

std::string_view to_string(RefineKind kind) noexcept {
  switch (kind) {
    case RefineKind::regenerate: return "regenerate";
    case RefineKind::shorten: return "shorten";
    case RefineKind::simplify: return "simplify";
  }
  return "?";
}

std::optional<RefineKind> parse_refine_kind(std::string_view name) noexcept {
  for (auto kind : {RefineKind::regenerate, RefineKind::shorten, RefineKind::simplify}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::size_t PromptBundle::count(ContextKind kind) const {
  return static_cast<std::size_t>(std::count_if(context_blocks.begin(), context_blocks.end(),
                                                [&](const ContextBlock& b) { return b.kind == kind; }));
}

json to_json(const PromptBundle& bundle) {
  json examples = json::array();
  for (const auto& example : bundle.few_shot_examples) {
    examples.push_back({{"role", to_string(example.role)}, {"text", example.text}});
  }
  json blocks = json::array();
  for (const auto& block : bundle.context_blocks) {
    blocks.push_back(
        {{"kind", to_string(block.kind)}, {"source", block.source}, {"payload", block.payload}});
  }
  return json{{"target", bundle.target},
              {"role", to_string(bundle.role)},
              {"frame_path", bundle.frame_path},
              {"task", to_string(bundle.task)},
              {"instruction", bundle.instruction},
              {"few_shot_examples", std::move(examples)},
              {"context_blocks", std::move(blocks)}};
}

std::string canonical_bundle(const PromptBundle& bundle) {
  return to_json(bundle).dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string bundle_hash(const PromptBundle& bundle) { return fnv1a_hex(canonical_bundle(bundle)); }

ChatMessages render_messages(const PromptBundle& bundle) {
  ChatMessages messages;
  std::ostringstream system;
  system << "You write text for a data visualization dashboard.\n\n" << bundle.instruction << "\n";
  if (!bundle.few_shot_examples.empty()) {
    system << "\nExamples of " << to_string(bundle.role) << " text from published dashboards:\n";
    for (const auto& example : bundle.few_shot_examples) system << "- " << example.text << "\n";
  }
  messages.system = system.str();

  std::ostringstream user;
  for (const auto& block : bundle.context_blocks) {
    switch (block.kind) {
      case ContextKind::locked_text:
        user << "## Locked text by the author (" << block.source << ")\n" << block.payload << "\n\n";
        break;
      case ContextKind::chart_spec:
        user << "## Chart specification (" << block.source << ")\n```json\n"
             << block.payload << "\n```\n\n";
        break;
      case ContextKind::chart_svg:
        user << "## Rendered chart (" << block.source << ")\n```svg\n" << block.payload << "\n```\n\n";
        break;
      case ContextKind::downstream_text:
        user << "## Text from a nested section (" << block.source << ")\n" << block.payload << "\n\n";
        break;
    }
  }
  user << "Write the " << to_string(bundle.role) << " text now.";
  messages.user = user.str();
  return messages;
}

bool RoleContextTable::requires_kind(TextRole role, ContextKind kind) const {
  auto it = chart_context.find(role);
  if (it == chart_context.end()) return false;
  return std::find(it->second.begin(), it->second.end(), kind) != it->second.end();
}

RoleContextTable role_context_table(const RuleTable& rules) {
  RoleContextTable table;
  table.chart_context[TextRole::label] = {ContextKind::chart_spec};
  table.chart_context[TextRole::context] = {ContextKind::chart_spec};
  table.chart_context[TextRole::encoding] = {ContextKind::chart_spec};
  table.chart_context[TextRole::interaction] = {ContextKind::chart_spec};
  table.chart_context[TextRole::insight] = {ContextKind::chart_spec, ContextKind::chart_svg};
  table.chart_context[TextRole::annotation] = {ContextKind::chart_spec, ContextKind::chart_svg};
  table.chart_context[TextRole::metadata] = {};
  table.compatibility = rules.compatibility;
  return table;
}

std::vector<LockedText> collect_locked_text(const DashboardDocument& doc) {
  std::vector<LockedText> out;
  for (const auto& id : snippets_in_reading_order(doc)) {
    const TextSnippet& snippet = doc.snippets.at(id);
    if (snippet.state == SnippetState::locked) out.push_back({id, snippet.role, snippet.content});
  }
  return out;
}

PromptBundle assemble_prompt(const DashboardDocument& doc, const SnippetId& id,
                             const DataTables& tables, const GenerationConfig& config) {
  const TextSnippet& snippet = get_snippet(doc, id);
  if (snippet.state == SnippetState::locked) {
    throw Error(ErrorCode::snippet_locked, "snippet '" + id + "' is locked");
  }
  const RoleContextTable context_table = role_context_table(tables.rules);
  const RolePrompts& prompts = tables.few_shot.prompts(snippet.role);

  PromptBundle bundle;
  bundle.target = id;
  bundle.role = snippet.role;
  bundle.frame_path = frame_path(doc, snippet.frame);
  bundle.few_shot_examples = examples_for(tables.few_shot, snippet.role);

  if (snippet.role == TextRole::metadata) {
    if (snippet.facts.empty()) {
      throw Error(ErrorCode::missing_required_context,
                  "metadata needs the author, data source and caveats; enter them as facts first");
    }
    bundle.task = PromptTask::generate;
    bundle.instruction = prompts.instruction + "\n\nFacts:";
    for (const auto& [key, value] : snippet.facts) bundle.instruction += "\n- " + key + ": " + value;
  } else {
    const Scope scope = scope_of(doc, id);
    const auto downstream =
        downstream_text(doc, snippet.frame, snippet.role, context_table.compatibility);
    if (!downstream.empty()) {
      bundle.task = PromptTask::summarize;
      bundle.instruction = prompts.summary_instruction + "\n" + scope_sentence(scope);
      for (const auto& text : downstream) {
        bundle.context_blocks.push_back({ContextKind::downstream_text, text.snippet, text.content});
      }
    } else {
      // Effective leaf: write straight from the charts in scope.
      bundle.task = PromptTask::generate;
      bundle.instruction = prompts.instruction + "\n" + scope_sentence(scope);
      std::vector<const Chart*> charts;
      for (const auto& chart_id : scope.covered_chart_ids) charts.push_back(&doc.charts.at(chart_id));
      if (snippet.role == TextRole::interaction) {
        std::erase_if(charts, [](const Chart* c) { return !has_interaction_bindings(c->spec); });
        if (charts.empty()) {
          throw Error(ErrorCode::missing_required_context,
                      "no chart in scope declares interactions; describe them to the system first");
        }
      }
      if (charts.empty()) {
        throw Error(ErrorCode::missing_required_context,
                    "no chart in scope of '" + id + "' to write " +
                        std::string(to_string(snippet.role)) + " text from");
      }
      for (const Chart* chart : charts) {
        if (context_table.requires_kind(snippet.role, ContextKind::chart_spec)) {
          bundle.context_blocks.push_back(
              {ContextKind::chart_spec, chart->id, chart->spec.dump(-1, ' ', false, json::error_handler_t::replace)});
        }
        if (context_table.requires_kind(snippet.role, ContextKind::chart_svg) &&
            !chart->rendered_svg.empty()) {
          bundle.context_blocks.push_back(
              {ContextKind::chart_svg, chart->id, truncate_svg(chart->rendered_svg, config.svg_budget)});
        }
      }
    }
  }

  append_locked_blocks(bundle, doc, id);
  if (bundle.count(ContextKind::locked_text) > 0) bundle.instruction += "\n" + kLockedNote;
  return bundle;
}

std::size_t GenerationReport::generated() const {
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.ok; }));
}

std::size_t GenerationReport::failed() const { return outcomes.size() - generated(); }

GenerationReport generate_all(DashboardDocument& doc, const std::set<SnippetId>& targets,
                              TextGenerator& port, const DataTables& tables,
                              const GenerationConfig& config, const LevelCommitted& on_level) {
  if (!port.ready()) throw Error(ErrorCode::port_unreachable, "text generator is not available");
  GenerationReport report;
  report.plan = generation_plan(doc, targets);
  const std::size_t limit = std::max<std::size_t>(1, config.concurrency);

  for (std::size_t level = 0; level < report.plan.levels.size(); ++level) {
    const auto& ids = report.plan.levels[level];
    std::vector<GenerationOutcome> outcomes(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      outcomes[i].snippet = ids[i];
      outcomes[i].level = level;
      try {
        outcomes[i].bundle = assemble_prompt(doc, ids[i], tables, config);
      } catch (const Error& e) {
        outcomes[i].error = e.code();
        outcomes[i].message = e.what();
      }
    }

    auto run = [&](GenerationOutcome& outcome) {
      if (!outcome.bundle) return;
      try {
        std::string text = port.complete(*outcome.bundle, config);
        if (text.empty()) {
          outcome.error = ErrorCode::generation_failed;
          outcome.message = "generator returned empty text";
          return;
        }
        outcome.content = std::move(text);
        outcome.ok = true;
      } catch (const Error& e) {
        outcome.error = e.code();
        outcome.message = e.what();
      } catch (const std::exception& e) {
        outcome.error = ErrorCode::generation_failed;
        outcome.message = e.what();
      }
    };

    for (std::size_t start = 0; start < outcomes.size(); start += limit) {
      const std::size_t end = std::min(outcomes.size(), start + limit);
      if (end - start == 1) {
        run(outcomes[start]);
        continue;
      }
      std::vector<std::future<void>> running;
      for (std::size_t i = start; i < end; ++i) {
        running.push_back(std::async(std::launch::async, run, std::ref(outcomes[i])));
      }
      for (auto& f : running) f.get();
    }

    for (auto& outcome : outcomes) {
      if (outcome.ok) apply_generated_text(doc, outcome.snippet, outcome.content);
      report.outcomes.push_back(std::move(outcome));
    }
    if (on_level) on_level(doc, level);
  }
  return report;
}

PromptBundle refinement_prompt(const DashboardDocument& doc, const SnippetId& id, RefineKind kind,
                               const DataTables& tables, const GenerationConfig& config) {
  const TextSnippet& snippet = get_snippet(doc, id);
  if (snippet.state == SnippetState::placeholder) {
    throw Error(ErrorCode::placeholder_not_refinable,
                "snippet '" + id + "' is a placeholder; generate or write text first");
  }
  if (snippet.state == SnippetState::locked) {
    throw Error(ErrorCode::snippet_locked, "snippet '" + id + "' is locked");
  }
  if (kind == RefineKind::regenerate) return assemble_prompt(doc, id, tables, config);

  PromptBundle bundle;
  bundle.target = id;
  bundle.role = snippet.role;
  bundle.frame_path = frame_path(doc, snippet.frame);
  bundle.task = kind == RefineKind::shorten ? PromptTask::shorten : PromptTask::simplify;
  const std::string& templ =
      kind == RefineKind::shorten ? tables.few_shot.shorten_instruction : tables.few_shot.simplify_instruction;
  bundle.instruction =
      replace_all(templ, "{role}", to_string(snippet.role)) + "\n\nText:\n" + snippet.content;
  bundle.few_shot_examples = examples_for(tables.few_shot, snippet.role);
  append_locked_blocks(bundle, doc, id);
  if (bundle.count(ContextKind::locked_text) > 0) bundle.instruction += "\n" + kLockedNote;
  return bundle;
}

std::string refine(DashboardDocument& doc, const SnippetId& id, RefineKind kind,
                   TextGenerator& port, const DataTables& tables, const GenerationConfig& config) {
  const PromptBundle bundle = refinement_prompt(doc, id, kind, tables, config);
  if (!port.ready()) throw Error(ErrorCode::port_unreachable, "text generator is not available");
  std::string text;
  try {
    text = port.complete(bundle, config);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::generation_failed, e.what());
  }
  if (text.empty()) throw Error(ErrorCode::generation_failed, "generator returned empty text");
  apply_generated_text(doc, id, text);
  return text;
}

}  // namespace dashtext
