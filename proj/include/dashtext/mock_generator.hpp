#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dashtext/generation.hpp"

namespace dashtext {

struct TranscriptEntry {
  std::string hash;
  PromptBundle bundle;
  std::string response;
};

/// Deterministic stand-in for a remote model. Answers are looked up by
/// bundle hash, first in registered responses, then in `<dir>/<hash>.txt`;
/// unknown bundles get "<role> for <frame path>" (prefixed "short" or
/// "simple" for refinements).
class MockGenerator final : public TextGenerator {
 public:
  MockGenerator() = default;
  explicit MockGenerator(std::filesystem::path canned_dir);

  std::string complete(const PromptBundle& bundle, const GenerationConfig& config) override;
  bool ready() const override;

  void add_response(const std::string& hash, std::string text);
  // Fault injection: complete() throws generation-failed for these targets.
  void fail_for(const SnippetId& target);
  void set_unreachable(bool unreachable);

  std::vector<TranscriptEntry> transcript() const;
  void write_transcript(const std::filesystem::path& path) const;

  static std::string synthesize(const PromptBundle& bundle);

 private:
  std::optional<std::filesystem::path> canned_dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::string> responses_;
  std::set<SnippetId> failing_;
  bool unreachable_ = false;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace dashtext
