// One line per acceptance criterion: PASS or FAIL, a name, and a short detail.
// `acceptance --update-golden` rewrites the golden scenario file.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "dashtext/document.hpp"
#include "dashtext/error.hpp"
#include "dashtext/generation.hpp"
#include "dashtext/metrics.hpp"
#include "dashtext/mock_generator.hpp"
#include "dashtext/scope.hpp"
#include "dashtext/serialization.hpp"
#include "dashtext/suggestions.hpp"
#include "support/fixtures.hpp"
#include "support/metrics_corpus.hpp"

using namespace dashtext;
using namespace dashtext::testing;

namespace {

constexpr double kMetricTolerance = 1e-9;
constexpr double kPlanBudgetSeconds = 5.0;
constexpr double kLockedBudgetSeconds = 10.0;

// Collects failures for one criterion; the first few are echoed.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " failure(s)";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

struct Result {
  bool ok = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const DataTables& tables() {
  static const DataTables t = DataTables::defaults();
  return t;
}

std::string label_placeholder() { return std::string(placeholder_text(TextRole::label)); }

std::vector<std::string> payloads(const PromptBundle& bundle, ContextKind kind) {
  std::vector<std::string> out;
  for (const auto& b : bundle.context_blocks) {
    if (b.kind == kind) out.push_back(b.payload);
  }
  return out;
}

std::set<SnippetId> all_snippets(const DashboardDocument& doc) {
  std::set<SnippetId> ids;
  for (const auto& [id, s] : doc.snippets) ids.insert(id);
  return ids;
}

// ---------------------------------------------------------------------------

Result topological_order() {
  Check check;
  std::mt19937 rng(20240601);
  RandomDocOptions options;
  options.max_depth = 6;
  options.max_frames = 60;
  std::size_t planned = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000; ++i) {
    const DashboardDocument doc = random_document(rng, options);
    const std::set<SnippetId> targets = all_snippets(doc);
    const GenerationPlan plan = generation_plan(doc, targets);
    planned += plan.order.size();
    check.expect(plan.order == oracle_depth_sort(doc, targets), "doc " + std::to_string(i) + ": order differs");
    check.expect(oracle_ancestors_after_descendants(doc, plan.order),
                 "doc " + std::to_string(i) + ": ancestor before descendant");
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < kPlanBudgetSeconds, "took " + std::to_string(elapsed) + " s");
  std::ostringstream detail;
  detail << "1000 trees, " << planned << " snippets planned, " << elapsed << " s";
  return {check.ok(), check.ok() ? detail.str() : check.summary()};
}

Result locked_invariance() {
  Check check;
  std::mt19937 rng(8675309);
  std::size_t locked_total = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 500; ++i) {
    RandomDocOptions options;
    options.locked_probability = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    DashboardDocument doc = random_document(rng, options);
    const auto locked = locked_contents(doc);
    locked_total += locked.size();
    MockGenerator mock;
    const GenerationReport report = generate_all(doc, all_snippets(doc), mock, tables());
    for (const auto& id : report.plan.order) {
      check.expect(!locked.contains(id), "doc " + std::to_string(i) + ": locked " + id + " planned");
    }
    check.expect(locked_contents(doc) == locked, "doc " + std::to_string(i) + ": locked text changed");
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < kLockedBudgetSeconds, "took " + std::to_string(elapsed) + " s");
  std::ostringstream detail;
  detail << "500 documents, " << locked_total << " locked snippets unchanged, " << elapsed << " s";
  return {check.ok(), check.ok() ? detail.str() : check.summary()};
}

Result nested_title_scenarios() {
  Check check;
  auto titled = [](SnippetState leaf_state, SectionDashboard& d, SnippetId& root_title, SnippetId& section_title,
                   SnippetId& leaf1_title, SnippetId& leaf2_title) {
    auto& doc = d.doc;
    root_title = add_snippet(doc, doc.root, TextRole::label, label_placeholder(), SnippetState::placeholder);
    section_title = add_snippet(doc, d.section, TextRole::label, label_placeholder(), SnippetState::placeholder);
    if (leaf_state == SnippetState::placeholder) {
      leaf1_title = add_snippet(doc, d.leaf1, TextRole::label, label_placeholder(), SnippetState::placeholder);
      leaf2_title = add_snippet(doc, d.leaf2, TextRole::label, label_placeholder(), SnippetState::placeholder);
    } else {
      leaf1_title = add_snippet(doc, d.leaf1, TextRole::label, "Wind Speed by Month", leaf_state);
      leaf2_title = add_snippet(doc, d.leaf2, TextRole::label, "Precipitation by Month", leaf_state);
    }
  };

  {  // (a) child titles feed the section title
    SectionDashboard d = section_dashboard();
    SnippetId root, section, l1, l2;
    titled(SnippetState::generated, d, root, section, l1, l2);
    MockGenerator mock;
    generate_all(d.doc, {section}, mock, tables());
    const auto transcript = mock.transcript();
    check.expect(transcript.size() == 1, "(a) expected one call");
    if (transcript.size() == 1) {
      const PromptBundle& b = transcript[0].bundle;
      check.expect(b.target == section, "(a) wrong target");
      check.expect(payloads(b, ContextKind::downstream_text) ==
                       std::vector<std::string>{"Wind Speed by Month", "Precipitation by Month"},
                   "(a) downstream text");
      check.expect(b.count(ContextKind::chart_spec) == 0, "(a) unexpected chart_spec");
      check.expect(transcript[0].response == "label for frame-1/frame-2", "(a) response");
    }
  }
  {  // (b) placeholder children: the section reads the charts
    SectionDashboard d = section_dashboard();
    SnippetId root, section, l1, l2;
    titled(SnippetState::placeholder, d, root, section, l1, l2);
    const PromptBundle b = assemble_prompt(d.doc, section, tables());
    check.expect(b.count(ContextKind::downstream_text) == 0, "(b) downstream_text present");
    check.expect(b.count(ContextKind::chart_spec) == 2, "(b) chart_spec count");
    std::vector<std::string> sources;
    for (const auto& block : b.context_blocks) {
      if (block.kind == ContextKind::chart_spec) sources.push_back(block.source);
    }
    check.expect(sources == std::vector<std::string>{d.chart1, d.chart2}, "(b) chart_spec sources");
  }
  {  // (c) a locked root title reaches every prompt exactly once
    SectionDashboard d = section_dashboard();
    SnippetId root, section, l1, l2;
    titled(SnippetState::placeholder, d, root, section, l1, l2);
    const std::string title = "How to Pack for Our Client Onsites";
    edit_snippet(d.doc, root, title);
    MockGenerator mock;
    generate_all(d.doc, all_snippets(d.doc), mock, tables());
    const auto transcript = mock.transcript();
    check.expect(transcript.size() == 3, "(c) expected three calls");
    for (const auto& entry : transcript) {
      check.expect(payloads(entry.bundle, ContextKind::locked_text) == std::vector<std::string>{title},
                   "(c) locked_text in " + entry.bundle.target);
    }
    check.expect(d.doc.snippets.at(root).content == title, "(c) root title changed");
  }
  return {check.ok(), check.ok() ? "scenarios a, b, c" : check.summary()};
}

Result metrics_oracle() {
  Check check;
  const StopwordList& stopwords = default_stopword_list();
  for (const auto& item : kMetricsCorpus) {
    const std::string text(item.text);
    const MetricsReport r = measure_text(text, stopwords);
    check.expect(r.word_count == item.words && r.sentence_count == item.sentences &&
                     r.syllable_count == item.syllables,
                 "counts for \"" + text + "\"");
    check.expect(std::abs(fk_grade(text) - oracle_fk(item)) <= kMetricTolerance, "fk_grade for \"" + text + "\"");
    check.expect(lexical_density(text, stopwords) == oracle_density(item), "density for \"" + text + "\"");
  }
  const double cat = fk_grade("The cat sat on the mat.");
  check.expect(std::abs(cat - (-1.45)) <= kMetricTolerance, "cat sentence grade " + std::to_string(cat));
  return {check.ok(), check.ok() ? "20 items within 1e-9, reference grade -1.45" : check.summary()};
}

Result guideline_conformance() {
  Check check;
  const std::string text =
      "Seattle averages more rainy days than Boston does in each month from October to April.";
  const MetricsReport r = measure_text(text);
  const RoleGuideline& g = default_guideline_table().guideline(TextRole::annotation);
  check.expect(r.word_count == 15, "word count " + std::to_string(r.word_count));
  check.expect(r.fk_grade >= 9.0 && r.fk_grade < 10.0, "grade " + std::to_string(r.fk_grade));
  check.expect(g.word_range.min == 10 && g.word_range.max == 20, "word band");
  check.expect(g.fk_range.min == 8 && g.fk_range.max == 10, "grade band");
  const ConformanceReport c = conformance(r, g);
  check.expect(c.word_count == Conformance::within, "word conformance");
  check.expect(c.fk_grade == Conformance::within, "grade conformance");
  std::ostringstream detail;
  detail << "15 words, grade " << r.fk_grade << ": " << to_string(c.word_count) << "/" << to_string(c.fk_grade);
  return {check.ok(), check.ok() ? detail.str() : check.summary()};
}

std::vector<SnippetId> of_role(const DashboardDocument& doc, const FrameId& frame, TextRole role) {
  std::vector<SnippetId> out;
  for (const auto& id : doc.frames.at(frame).snippet_ids) {
    if (doc.snippets.at(id).role == role) out.push_back(id);
  }
  return out;
}

Result placement() {
  Check check;
  FlatDashboard d = flat_dashboard(2);
  auto& doc = d.doc;
  const RuleTable& rules = tables().rules;
  accept_all(doc, rules);

  std::size_t metadata = 0;
  for (const auto& [id, s] : doc.snippets) {
    metadata += s.role == TextRole::metadata;
    check.expect(s.state == SnippetState::placeholder, id + " is not a placeholder");
  }
  check.expect(metadata == 1, "metadata count " + std::to_string(metadata));
  const auto root_meta = of_role(doc, doc.root, TextRole::metadata);
  check.expect(root_meta.size() == 1 && doc.frames.at(doc.root).snippet_ids.back() == root_meta[0],
               "metadata not at the root bottom");
  for (const auto& leaf : d.leaves) {
    check.expect(of_role(doc, leaf, TextRole::interaction).size() == 1, "interaction in " + leaf);
    check.expect(of_role(doc, leaf, TextRole::encoding).size() == 1, "encoding in " + leaf);
  }
  for (const auto& [id, frame] : doc.frames) {
    const auto labels = of_role(doc, id, TextRole::label);
    check.expect(labels.size() == 1 && frame.snippet_ids.front() == labels[0], "label on top of " + id);
  }
  const std::size_t before = doc.snippets.size();
  check.expect(accept_all(doc, rules).empty() && doc.snippets.size() == before, "rerun created snippets");
  return {check.ok(), check.ok() ? std::to_string(before) + " placeholders, rerun created 0" : check.summary()};
}

// ---------------------------------------------------------------------------
// Two cities, two weather aspects each, authored with six clicks and three phrases.

std::string band_chart_spec(const std::string& city, const std::string& field) {
  return R"({"$schema":"https://vega.github.io/schema/vega-lite/v5.json",)"
         R"("title":")" + city + R"(",)"
         R"("data":{"url":"data/weather.csv"},"transform":[{"filter":"datum.city === ')" + city + R"('"}],)"
         R"("encoding":{"x":{"field":"date","timeUnit":"month","type":"temporal","title":"Month"}},)"
         R"("layer":[{"mark":{"type":"errorband","extent":"ci"},)"
         R"("encoding":{"y":{"field":")" + field + R"(","type":"quantitative"}}},)"
         R"({"mark":"line","encoding":{"y":{"aggregate":"mean","field":")" + field +
         R"(","type":"quantitative"}}}]})";
}

// Answers the walkthrough's prompts with fixed prose, keyed on role, frame and task.
class ScriptedGenerator final : public TextGenerator {
 public:
  std::string complete(const PromptBundle& bundle, const GenerationConfig& config) override {
    std::string text = MockGenerator::synthesize(bundle);
    const auto it = script_.find(key(bundle));
    if (it != script_.end()) text = it->second;
    std::lock_guard lock(mutex_);
    calls_.push_back(bundle);
    (void)config;
    return text;
  }
  void say(TextRole role, const std::string& frame_path, PromptTask task, std::string text) {
    script_[std::string(to_string(role)) + "|" + frame_path + "|" + std::string(to_string(task))] = std::move(text);
  }
  std::vector<PromptBundle> calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
  }

 private:
  static std::string key(const PromptBundle& b) {
    return std::string(to_string(b.role)) + "|" + b.frame_path + "|" + std::string(to_string(b.task));
  }
  std::map<std::string, std::string> script_;
  mutable std::mutex mutex_;
  std::vector<PromptBundle> calls_;
};

struct OnsiteRun {
  std::string bytes;
  std::vector<PromptBundle> calls;
};

OnsiteRun onsite_scenario(std::size_t concurrency) {
  const RuleTable& rules = tables().rules;
  GenerationConfig config;
  config.concurrency = concurrency;
  ScriptedGenerator port;

  DashboardDocument doc = create_document("onsite-weather", {0, 0, 1200, 900});
  const FrameId seattle = add_frame(doc, doc.root, {0, 120, 600, 700});
  const FrameId new_york = add_frame(doc, doc.root, {600, 120, 600, 700});
  for (const auto& [section, city] : {std::pair{seattle, "Seattle"}, std::pair{new_york, "New York"}}) {
    const FrameId temp = add_frame(doc, section, {0, 80, 600, 300});
    const FrameId rain = add_frame(doc, section, {0, 380, 600, 300});
    add_chart(doc, temp, band_chart_spec(city, "temp_max"), small_svg(std::string(city) + " temperature"));
    add_chart(doc, rain, band_chart_spec(city, "precipitation"), small_svg(std::string(city) + " precipitation"));
    const std::string path = "frame-1/" + section;
    port.say(TextRole::label, path, PromptTask::summarize, std::string(city) + " Weather");
    port.say(TextRole::label, path + "/" + temp, PromptTask::generate, std::string(city) + " Daily High by Month");
    port.say(TextRole::label, path + "/" + rain, PromptTask::generate, std::string(city) + " Precipitation by Month");
    for (const auto& leaf : {temp, rain}) {
      port.say(TextRole::encoding, path + "/" + leaf, PromptTask::generate,
               "The line is the monthly mean; the shaded band is its 95% confidence interval.");
    }
  }
  port.say(TextRole::label, "frame-1", PromptTask::summarize, "Seattle and New York Weather");
  port.say(TextRole::metadata, "frame-1", PromptTask::generate,
           "Made by the analytics team from NOAA daily weather summaries. Data for 2024 is incomplete and partly imputed.");
  port.say(TextRole::context, "frame-1", PromptTask::summarize,
           "Planning a client onsite? Seattle's wet season runs from October through April, so an umbrella "
           "and waterproof layers are essential, while New York's summers call for lighter clothing.");
  port.say(TextRole::context, "frame-1", PromptTask::simplify,
           "Going to a client onsite? Pack an umbrella for Seattle from October to April. Pack light clothes "
           "for New York in summer.");

  auto generate = [&](const std::vector<SnippetId>& ids) {
    const GenerationReport report = generate_all(doc, {ids.begin(), ids.end()}, port, tables(), config);
    if (report.failed() > 0) throw std::runtime_error("generation failed for " + report.outcomes.front().snippet);
  };

  generate(accept_suggestion(doc, "label", rules));
  generate(accept_suggestion(doc, "encoding", rules));
  const auto metadata = accept_suggestion(doc, "metadata", rules);
  for (const auto& id : metadata) {
    set_facts(doc, id,
              {{"author", "analytics team"},
               {"source", "NOAA daily weather summaries"},
               {"caveat", "2024 data is incomplete and partially imputed"}});
  }
  generate(metadata);
  const SnippetId title = doc.frames.at(doc.root).snippet_ids.front();
  edit_snippet(doc, title, "How to Pack for Our Client Onsites");
  const auto context = accept_suggestion(doc, "context", rules);
  generate(context);
  for (const auto& id : context) refine(doc, id, RefineKind::simplify, port, tables(), config);
  return {save(doc), port.calls()};
}

// What each step's prompts must have carried.
void check_onsite_prompts(Check& check, const std::vector<PromptBundle>& calls) {
  const std::string title = "How to Pack for Our Client Onsites";
  std::size_t encodings = 0, metadata = 0, contexts = 0;
  for (const auto& b : calls) {
    const auto locked = payloads(b, ContextKind::locked_text);
    if (b.role == TextRole::encoding) {
      ++encodings;
      const auto specs = payloads(b, ContextKind::chart_spec);
      check.expect(specs.size() == 1 && specs[0].find("errorband") != std::string::npos,
                   "encoding prompt lacks the band spec");
      check.expect(locked.empty(), "encoding prompt saw locked text before the edit");
    } else if (b.role == TextRole::metadata) {
      ++metadata;
      check.expect(b.instruction.find("2024 data is incomplete") != std::string::npos, "metadata facts missing");
    } else if (b.role == TextRole::context) {
      ++contexts;
      if (b.task == PromptTask::simplify) continue;
      check.expect(locked == std::vector<std::string>{title}, "context prompt lacks the locked title");
      check.expect(b.count(ContextKind::downstream_text) > 0, "context prompt has no downstream text");
    }
  }
  check.expect(encodings == 4, "encoding calls " + std::to_string(encodings));
  check.expect(metadata == 1, "metadata calls " + std::to_string(metadata));
  check.expect(contexts == 2, "context calls " + std::to_string(contexts));
}

std::filesystem::path golden_path() { return std::filesystem::path(DASHTEXT_GOLDEN_DIR) / "onsite_weather.json"; }

Result golden_scenario(bool update) {
  Check check;
  const OnsiteRun run = onsite_scenario(4);
  const std::string& first = run.bytes;
  check.expect(first == onsite_scenario(1).bytes, "two runs differ");
  check_onsite_prompts(check, run.calls);
  if (update) {
    std::ofstream(golden_path(), std::ios::binary) << first;
    return {check.ok(), "golden rewritten"};
  }
  const std::string golden = read_text_file(golden_path());
  check.expect(first == golden, "output differs from " + golden_path().filename().string());
  if (first != golden) {
    std::ofstream(std::filesystem::current_path() / "onsite_weather.actual.json", std::ios::binary) << first;
  }
  const DashboardDocument doc = load(first);
  const SnippetId title = doc.frames.at(doc.root).snippet_ids.front();
  check.expect(doc.snippets.at(title).state == SnippetState::locked, "title not locked");
  std::size_t placeholders = 0;
  for (const auto& [id, s] : doc.snippets) placeholders += s.state == SnippetState::placeholder;
  check.expect(placeholders == 0, std::to_string(placeholders) + " placeholders left");
  return {check.ok(), check.ok() ? std::to_string(first.size()) + " bytes, identical across runs" : check.summary()};
}

Result persistence() {
  Check check;
  std::vector<DashboardDocument> fixtures;
  fixtures.push_back(flat_dashboard(1).doc);
  fixtures.push_back(flat_dashboard(3).doc);
  fixtures.push_back(section_dashboard().doc);
  {
    FlatDashboard d = flat_dashboard(2);
    accept_all(d.doc, tables().rules);
    fixtures.push_back(d.doc);
  }
  fixtures.push_back(load(read_text_file(golden_path())));
  std::mt19937 rng(4242);
  for (int i = 0; i < 50; ++i) fixtures.push_back(random_document(rng));
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const std::string once = save(fixtures[i]);
    check.expect(save(load(once)) == once, "fixture " + std::to_string(i) + " not stable");
  }

  auto rejects = [&](const std::string& name, const std::string& bytes, ErrorCode expected) {
    try {
      load(bytes);
      check.expect(false, name + " accepted");
    } catch (const Error& e) {
      check.expect(e.code() == expected, name + " gave " + std::string(e.code_name()));
    }
  };
  SectionDashboard d = section_dashboard();
  const nlohmann::json base = to_json(d.doc);
  {
    nlohmann::json j = base;
    j["frames"][d.leaf1]["parent"] = d.leaf2;
    j["frames"][d.leaf2]["parent"] = d.leaf1;
    j["frames"][d.leaf1]["children"] = nlohmann::json::array({d.leaf2});
    j["frames"][d.leaf2]["children"] = nlohmann::json::array({d.leaf1});
    j["frames"][d.section]["children"] = nlohmann::json::array();
    rejects("cycle", j.dump(), ErrorCode::invariant_violation);
  }
  {
    nlohmann::json j = base;
    j["frames"][d.section]["parent"] = nullptr;
    j["frames"][d.doc.root]["children"] = nlohmann::json::array({d.sibling});
    rejects("two roots", j.dump(), ErrorCode::invariant_violation);
  }
  {
    nlohmann::json j = base;
    j["frames"][d.section]["children"].push_back("frame-404");
    rejects("dangling child", j.dump(), ErrorCode::invariant_violation);
  }
  {
    nlohmann::json j = base;
    j["frames"][d.leaf2]["chart_ids"].push_back(d.chart1);
    rejects("shared chart", j.dump(), ErrorCode::invariant_violation);
  }
  {
    nlohmann::json j = base;
    j["frames"][d.sibling]["geometry"]["x"] = 700;
    rejects("overlap", j.dump(), ErrorCode::invariant_violation);
  }
  rejects("truncated", save(d.doc).substr(0, 40), ErrorCode::malformed_document);
  return {check.ok(), check.ok() ? std::to_string(fixtures.size()) + " fixtures stable, 6 bad documents rejected"
                                 : check.summary()};
}

}  // namespace

int main(int argc, char** argv) {
  const bool update = argc > 1 && std::strcmp(argv[1], "--update-golden") == 0;
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"topological-order", topological_order},
      {"locked-invariance", locked_invariance},
      {"nested-title-scenarios", nested_title_scenarios},
      {"metrics-oracle", metrics_oracle},
      {"guideline-conformance", guideline_conformance},
      {"placement", placement},
      {"golden-scenario", [update] { return golden_scenario(update); }},
      {"persistence", persistence},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    failed += !r.ok;
    std::cout << (r.ok ? "PASS " : "FAIL ") << name << ": " << r.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
