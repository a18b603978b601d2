#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "dashtext/types.hpp"

namespace dashtext {

using Revision = std::uint64_t;

// Immutable view of one stored document.
struct Snapshot {
  std::shared_ptr<const DashboardDocument> doc;
  Revision revision = 0;
  std::string bytes;  // canonical serialization
};

// A directory of `<id>.json` canonical files with `<id>.rev` revision
// counters. Writers to the same document are serialized and must name the
// revision they started from; readers get the latest snapshot without waiting
// on writers.
class DocumentStore {
 public:
  explicit DocumentStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  // Throws unknown-document.
  Snapshot get(const DocumentId& id);
  bool exists(const DocumentId& id);

  // Fails with revision-conflict if the id is taken.
  Snapshot create(const DashboardDocument& doc);

  // Replaces the document (creating it when absent). A set `expected` must
  // equal the current revision; 0 means "must not exist yet".
  Snapshot put(const DashboardDocument& doc, std::optional<Revision> expected);

  // Runs `change` on a copy of the current document while holding the
  // document's write lock, validates the result and stores it. Nothing is
  // written if `change` throws. The lock also keeps generation jobs exclusive.
  Snapshot update(const DocumentId& id, std::optional<Revision> expected,
                  const std::function<void(DashboardDocument&)>& change);

  static bool valid_id(std::string_view id);

 private:
  struct Slot {
    std::mutex write;
    std::mutex read;
    std::optional<Snapshot> current;
  };

  Slot& slot(const DocumentId& id);
  std::optional<Snapshot> read_slot(const DocumentId& id, Slot& slot);
  Snapshot commit(Slot& slot, const DashboardDocument& doc, Revision revision);

  std::filesystem::path dir_;
  std::mutex slots_mutex_;
  std::map<DocumentId, std::unique_ptr<Slot>> slots_;
};

}  // namespace dashtext
