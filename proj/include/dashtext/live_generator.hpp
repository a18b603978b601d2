#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "dashtext/generation.hpp"

namespace dashtext {

struct LiveGeneratorOptions {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string api_key;
  int timeout_seconds = 60;
  // Requests and responses are appended here as JSON lines, key redacted.
  std::optional<std::filesystem::path> transcript;
};

inline constexpr const char* kApiKeyEnv = "DASHTEXT_API_KEY";

// Chat-completion client. Construction fails with invalid-config when no API
// key is given.
class LiveGenerator final : public TextGenerator {
 public:
  explicit LiveGenerator(LiveGeneratorOptions options);

  std::string complete(const PromptBundle& bundle, const GenerationConfig& config) override;
  bool ready() const override { return !options_.api_key.empty(); }

  static nlohmann::json request_body(const PromptBundle& bundle, const GenerationConfig& config);
  // Pulls choices[0].message.content; throws generation-failed otherwise.
  static std::string parse_response(const std::string& body);

 private:
  void log(const nlohmann::json& entry);
  std::string redact(std::string text) const;

  LiveGeneratorOptions options_;
  std::mutex log_mutex_;
};

}  // namespace dashtext
