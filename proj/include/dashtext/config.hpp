#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "dashtext/data_tables.hpp"
#include "dashtext/generation.hpp"

namespace dashtext {

enum class GeneratorMode { mock, live };
std::string_view to_string(GeneratorMode mode) noexcept;

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path store = "documents";
  GeneratorMode mode = GeneratorMode::mock;
  GenerationConfig generation;
  std::optional<std::filesystem::path> canned_dir;   // mock only
  std::optional<std::filesystem::path> transcript;   // JSON lines of every port call
  std::string base_url = "https://api.openai.com";   // live only
  DataPaths data;
};

// Reads a JSON config file. Relative paths inside it resolve against the
// file's directory. Unknown keys are rejected with invalid-config.
ServiceConfig load_config(const std::filesystem::path& path);
ServiceConfig config_from_json(const nlohmann::json& value,
                               const std::filesystem::path& base = {});

// Live mode reads the key from the environment and fails fast without one.
std::unique_ptr<TextGenerator> make_generator(const ServiceConfig& config);

}  // namespace dashtext
