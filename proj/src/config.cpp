#include "dashtext/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>

#include "dashtext/live_generator.hpp"
#include "dashtext/mock_generator.hpp"

namespace dashtext {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::invalid_config, message); }

void only_keys(const json& object, std::initializer_list<std::string_view> keys, const std::string& where) {
  if (!object.is_object()) invalid(where + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      invalid("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get(const json& object, const char* key, const std::string& where) {
  try {
    return object.at(key).get<T>();
  } catch (const json::exception&) {
    invalid("bad value for '" + std::string(key) + "' in " + where);
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

// Mock port that also appends each call to a transcript file.
class TranscribingMock final : public TextGenerator {
 public:
  TranscribingMock(std::optional<std::filesystem::path> canned, std::filesystem::path transcript)
      : mock_(canned ? std::make_unique<MockGenerator>(*canned) : std::make_unique<MockGenerator>()),
        transcript_(std::move(transcript)) {}

  std::string complete(const PromptBundle& bundle, const GenerationConfig& config) override {
    std::string text = mock_->complete(bundle, config);
    json line{{"hash", bundle_hash(bundle)}, {"bundle", to_json(bundle)}, {"response", text}};
    std::lock_guard lock(mutex_);
    std::ofstream out(transcript_, std::ios::binary | std::ios::app);
    out << line.dump(-1, ' ', false, json::error_handler_t::replace) << "\n";
    return text;
  }

 private:
  std::unique_ptr<MockGenerator> mock_;
  std::filesystem::path transcript_;
  std::mutex mutex_;
};

}  // namespace

std::string_view to_string(GeneratorMode mode) noexcept {
  return mode == GeneratorMode::mock ? "mock" : "live";
}

ServiceConfig config_from_json(const json& value, const std::filesystem::path& base) {
  only_keys(value, {"listen", "store", "generator", "data"}, "config");
  ServiceConfig config;
  if (value.contains("listen")) {
    const json& listen = value["listen"];
    only_keys(listen, {"host", "port"}, "listen");
    if (listen.contains("host")) config.host = get<std::string>(listen, "host", "listen");
    if (listen.contains("port")) config.port = get<int>(listen, "port", "listen");
    if (config.port < 0 || config.port > 65535) invalid("listen.port out of range");
  }
  if (value.contains("store")) config.store = resolve(base, get<std::string>(value, "store", "config"));
  if (value.contains("generator")) {
    const json& g = value["generator"];
    only_keys(g, {"mode", "model", "temperature", "concurrency", "svg_budget", "canned_dir", "transcript", "base_url"},
              "generator");
    if (g.contains("mode")) {
      const auto mode = get<std::string>(g, "mode", "generator");
      if (mode == "mock") {
        config.mode = GeneratorMode::mock;
      } else if (mode == "live") {
        config.mode = GeneratorMode::live;
      } else {
        invalid("generator.mode must be 'mock' or 'live'");
      }
    }
    if (g.contains("model")) config.generation.model = get<std::string>(g, "model", "generator");
    if (g.contains("temperature")) config.generation.temperature = get<double>(g, "temperature", "generator");
    if (g.contains("concurrency")) {
      const int n = get<int>(g, "concurrency", "generator");
      if (n < 1) invalid("generator.concurrency must be at least 1");
      config.generation.concurrency = static_cast<std::size_t>(n);
    }
    if (g.contains("svg_budget")) {
      const int n = get<int>(g, "svg_budget", "generator");
      if (n < 64) invalid("generator.svg_budget must be at least 64");
      config.generation.svg_budget = static_cast<std::size_t>(n);
    }
    if (g.contains("canned_dir")) config.canned_dir = resolve(base, get<std::string>(g, "canned_dir", "generator"));
    if (g.contains("transcript")) config.transcript = resolve(base, get<std::string>(g, "transcript", "generator"));
    if (g.contains("base_url")) config.base_url = get<std::string>(g, "base_url", "generator");
  }
  if (value.contains("data")) {
    const json& d = value["data"];
    only_keys(d, {"rules", "guidelines", "stopwords", "few_shot"}, "data");
    if (d.contains("rules")) config.data.rules = resolve(base, get<std::string>(d, "rules", "data"));
    if (d.contains("guidelines")) config.data.guidelines = resolve(base, get<std::string>(d, "guidelines", "data"));
    if (d.contains("stopwords")) config.data.stopwords = resolve(base, get<std::string>(d, "stopwords", "data"));
    if (d.contains("few_shot")) config.data.few_shot = resolve(base, get<std::string>(d, "few_shot", "data"));
  }
  return config;
}

ServiceConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    invalid(e.what());
  }
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) invalid("config file '" + path.string() + "' is not valid JSON");
  return config_from_json(value, path.parent_path());
}

std::unique_ptr<TextGenerator> make_generator(const ServiceConfig& config) {
  if (config.mode == GeneratorMode::live) {
    LiveGeneratorOptions options;
    options.base_url = config.base_url;
    const char* key = std::getenv(kApiKeyEnv);
    options.api_key = key ? key : "";
    options.transcript = config.transcript;
    return std::make_unique<LiveGenerator>(std::move(options));
  }
  if (config.transcript) return std::make_unique<TranscribingMock>(config.canned_dir, *config.transcript);
  if (config.canned_dir) return std::make_unique<MockGenerator>(*config.canned_dir);
  return std::make_unique<MockGenerator>();
}

}  // namespace dashtext
