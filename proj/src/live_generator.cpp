#include "dashtext/live_generator.hpp"

#include <fstream>

#include "httplib.h"

namespace dashtext {

using nlohmann::json;

LiveGenerator::LiveGenerator(LiveGeneratorOptions options) : options_(std::move(options)) {
  if (options_.api_key.empty()) {
    throw Error(ErrorCode::invalid_config,
                std::string("live generation needs an API key (set ") + kApiKeyEnv + ")");
  }
}

json LiveGenerator::request_body(const PromptBundle& bundle, const GenerationConfig& config) {
  const ChatMessages messages = render_messages(bundle);
  return json{{"model", config.model},
              {"temperature", config.temperature},
              {"messages",
               json::array({{{"role", "system"}, {"content", messages.system}},
                            {{"role", "user"}, {"content", messages.user}}})}};
}

std::string LiveGenerator::parse_response(const std::string& body) {
  json value = json::parse(body, nullptr, false);
  if (value.is_discarded()) throw Error(ErrorCode::generation_failed, "response is not JSON");
  try {
    std::string text = value.at("choices").at(0).at("message").at("content").get<std::string>();
    auto first = text.find_first_not_of(" \t\r\n");
    auto last = text.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) throw Error(ErrorCode::generation_failed, "empty completion");
    return text.substr(first, last - first + 1);
  } catch (const json::exception&) {
    throw Error(ErrorCode::generation_failed, "response has no choices[0].message.content");
  }
}

std::string LiveGenerator::redact(std::string text) const {
  const std::string& key = options_.api_key;
  std::size_t pos = 0;
  while (!key.empty() && (pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), "[REDACTED]");
  }
  return text;
}

void LiveGenerator::log(const json& entry) {
  if (!options_.transcript) return;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(*options_.transcript, std::ios::binary | std::ios::app);
  out << redact(entry.dump(-1, ' ', false, json::error_handler_t::replace)) << "\n";
}

std::string LiveGenerator::complete(const PromptBundle& bundle, const GenerationConfig& config) {
  const json body = request_body(bundle, config);
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  const httplib::Headers headers{{"Authorization", "Bearer " + options_.api_key}};

  json entry{{"target", bundle.target},
             {"url", options_.base_url + options_.path},
             {"headers", {{"Authorization", "Bearer [REDACTED]"}}},
             {"request", body}};
  auto result = client.Post(options_.path, headers, body.dump(), "application/json");
  if (!result) {
    entry["error"] = httplib::to_string(result.error());
    log(entry);
    throw Error(ErrorCode::port_unreachable,
                "cannot reach " + options_.base_url + ": " + httplib::to_string(result.error()));
  }
  entry["status"] = result->status;
  entry["response"] = result->body;
  log(entry);
  if (result->status < 200 || result->status >= 300) {
    throw Error(ErrorCode::generation_failed,
                "generator answered HTTP " + std::to_string(result->status));
  }
  return parse_response(result->body);
}

}  // namespace dashtext
