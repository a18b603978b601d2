#pragma once

#include <memory>
#include <string>

#include "dashtext/data_tables.hpp"
#include "dashtext/error.hpp"
#include "dashtext/generation.hpp"
#include "dashtext/store.hpp"

namespace dashtext {

// HTTP status used for an engine error code.
int http_status(ErrorCode code) noexcept;
// application/problem+json body for an error.
nlohmann::json problem_json(ErrorCode code, const std::string& detail);

// Document routes over a store. Every response can be reproduced by calling
// the engine operations directly; the handlers only decode, dispatch and
// encode.
class ApiServer {
 public:
  ApiServer(DocumentStore& store, TextGenerator& generator, DataTables tables, GenerationConfig generation);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds without serving yet. Port 0 picks a free port. Returns the port,
  // or -1 when binding fails.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool run();
  void stop();
  // Waits until run() is accepting connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dashtext
