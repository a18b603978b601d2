#include "dashtext/mock_generator.hpp"

#include <fstream>

#include "dashtext/data_tables.hpp"

namespace dashtext {

MockGenerator::MockGenerator(std::filesystem::path canned_dir) : canned_dir_(std::move(canned_dir)) {}

std::string MockGenerator::synthesize(const PromptBundle& bundle) {
  std::string text;
  if (bundle.task == PromptTask::shorten) text = "short ";
  if (bundle.task == PromptTask::simplify) text = "simple ";
  text += to_string(bundle.role);
  text += " for ";
  text += bundle.frame_path;
  return text;
}

std::string MockGenerator::complete(const PromptBundle& bundle, const GenerationConfig&) {
  const std::string hash = bundle_hash(bundle);
  std::optional<std::string> answer;
  {
    std::lock_guard lock(mutex_);
    if (unreachable_) throw Error(ErrorCode::port_unreachable, "mock generator is offline");
    if (failing_.contains(bundle.target)) {
      throw Error(ErrorCode::generation_failed, "injected failure for '" + bundle.target + "'");
    }
    if (auto it = responses_.find(hash); it != responses_.end()) answer = it->second;
  }
  if (!answer && canned_dir_) {
    const auto path = *canned_dir_ / (hash + ".txt");
    if (std::filesystem::exists(path)) {
      std::string text = read_text_file(path);
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      answer = std::move(text);
    }
  }
  if (!answer) answer = synthesize(bundle);

  std::lock_guard lock(mutex_);
  transcript_.push_back({hash, bundle, *answer});
  return *answer;
}

bool MockGenerator::ready() const {
  std::lock_guard lock(mutex_);
  return !unreachable_;
}

void MockGenerator::add_response(const std::string& hash, std::string text) {
  std::lock_guard lock(mutex_);
  responses_[hash] = std::move(text);
}

void MockGenerator::fail_for(const SnippetId& target) {
  std::lock_guard lock(mutex_);
  failing_.insert(target);
}

void MockGenerator::set_unreachable(bool unreachable) {
  std::lock_guard lock(mutex_);
  unreachable_ = unreachable;
}

std::vector<TranscriptEntry> MockGenerator::transcript() const {
  std::lock_guard lock(mutex_);
  return transcript_;
}

void MockGenerator::write_transcript(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  for (const auto& entry : transcript()) {
    nlohmann::json line{{"hash", entry.hash}, {"bundle", to_json(entry.bundle)}, {"response", entry.response}};
    out << line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << "\n";
  }
}

}  // namespace dashtext
