#include "dashtext/store.hpp"

#include <fstream>

#include "dashtext/data_tables.hpp"
#include "dashtext/document.hpp"
#include "dashtext/error.hpp"
#include "dashtext/serialization.hpp"

namespace dashtext {

namespace {

void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void check_revision(const DocumentId& id, std::optional<Revision> expected, Revision current) {
  if (expected && *expected != current) {
    throw Error(ErrorCode::revision_conflict, "document '" + id + "' is at revision " + std::to_string(current) +
                                                  ", not " + std::to_string(*expected));
  }
}

}  // namespace

DocumentStore::DocumentStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

bool DocumentStore::valid_id(std::string_view id) {
  if (id.empty() || id.size() > 128) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_';
    if (!ok) return false;
  }
  return true;
}

DocumentStore::Slot& DocumentStore::slot(const DocumentId& id) {
  if (!valid_id(id)) throw Error(ErrorCode::bad_request, "invalid document id '" + id + "'");
  std::lock_guard lock(slots_mutex_);
  auto& entry = slots_[id];
  if (!entry) entry = std::make_unique<Slot>();
  return *entry;
}

std::optional<Snapshot> DocumentStore::read_slot(const DocumentId& id, Slot& s) {
  {
    std::lock_guard lock(s.read);
    if (s.current) return s.current;
  }
  const auto path = dir_ / (id + ".json");
  if (!std::filesystem::exists(path)) return std::nullopt;
  Snapshot snap;
  snap.bytes = read_text_file(path);
  snap.doc = std::make_shared<const DashboardDocument>(load(snap.bytes));
  snap.revision = 1;
  const auto rev_path = dir_ / (id + ".rev");
  if (std::filesystem::exists(rev_path)) snap.revision = std::stoull(read_text_file(rev_path));
  std::lock_guard lock(s.read);
  if (!s.current) s.current = snap;
  return s.current;
}

Snapshot DocumentStore::commit(Slot& s, const DashboardDocument& doc, Revision revision) {
  Snapshot snap;
  snap.bytes = save(doc);
  snap.doc = std::make_shared<const DashboardDocument>(doc);
  snap.revision = revision;
  write_atomically(dir_ / (doc.id + ".json"), snap.bytes);
  write_atomically(dir_ / (doc.id + ".rev"), std::to_string(revision) + "\n");
  std::lock_guard lock(s.read);
  s.current = snap;
  return snap;
}

Snapshot DocumentStore::get(const DocumentId& id) {
  Slot& s = slot(id);
  auto snap = read_slot(id, s);
  if (!snap) throw Error(ErrorCode::unknown_document, "no document '" + id + "'");
  return *snap;
}

bool DocumentStore::exists(const DocumentId& id) {
  Slot& s = slot(id);
  return read_slot(id, s).has_value();
}

Snapshot DocumentStore::create(const DashboardDocument& doc) { return put(doc, Revision{0}); }

Snapshot DocumentStore::put(const DashboardDocument& doc, std::optional<Revision> expected) {
  validate(doc);
  Slot& s = slot(doc.id);
  std::lock_guard write(s.write);
  const auto current = read_slot(doc.id, s);
  check_revision(doc.id, expected, current ? current->revision : 0);
  return commit(s, doc, (current ? current->revision : 0) + 1);
}

Snapshot DocumentStore::update(const DocumentId& id, std::optional<Revision> expected,
                               const std::function<void(DashboardDocument&)>& change) {
  Slot& s = slot(id);
  std::lock_guard write(s.write);
  const auto current = read_slot(id, s);
  if (!current) throw Error(ErrorCode::unknown_document, "no document '" + id + "'");
  check_revision(id, expected, current->revision);
  DashboardDocument doc = *current->doc;
  change(doc);
  if (doc.id != id) throw Error(ErrorCode::bad_request, "document id cannot change");
  validate(doc);
  return commit(s, doc, current->revision + 1);
}

}  // namespace dashtext
