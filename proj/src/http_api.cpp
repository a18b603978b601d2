#include "dashtext/http_api.hpp"

#include "dashtext/document.hpp"
#include "dashtext/scope.hpp"
#include "dashtext/serialization.hpp"
#include "dashtext/suggestions.hpp"
#include "dashtext/views.hpp"
#include "httplib.h"

namespace dashtext {

using nlohmann::json;

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::unknown_parent:
    case ErrorCode::unknown_frame:
    case ErrorCode::unknown_chart:
    case ErrorCode::unknown_snippet:
    case ErrorCode::unknown_suggestion:
    case ErrorCode::unknown_document:
      return 404;
    case ErrorCode::revision_conflict:
    case ErrorCode::already_resolved:
    case ErrorCode::snippet_locked:
    case ErrorCode::frame_has_chart:
      return 409;
    case ErrorCode::bad_request:
    case ErrorCode::malformed_spec:
    case ErrorCode::malformed_svg:
    case ErrorCode::malformed_document:
    case ErrorCode::unknown_schema_version:
      return 400;
    case ErrorCode::generation_failed:
      return 502;
    case ErrorCode::port_unreachable:
      return 503;
    default:
      return 422;
  }
}

json problem_json(ErrorCode code, const std::string& detail) {
  const int status = http_status(code);
  return json{{"type", "about:blank"},
              {"title", httplib::status_message(status)},
              {"status", status},
              {"code", code_name(code)},
              {"detail", detail}};
}

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kDoc = R"(/documents/([A-Za-z0-9_-]+))";

std::string route(const std::string& tail) { return std::string(kDoc) + tail; }

void send_problem(httplib::Response& res, ErrorCode code, const std::string& detail) {
  res.status = http_status(code);
  res.set_content(problem_json(code, detail).dump(2) + "\n", "application/problem+json");
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(2, ' ', false, json::error_handler_t::replace) + "\n", kJson);
}

void set_revision(httplib::Response& res, Revision revision) {
  res.set_header("ETag", "\"" + std::to_string(revision) + "\"");
}

std::optional<Revision> if_match(const httplib::Request& req) {
  if (!req.has_header("If-Match")) return std::nullopt;
  std::string value = req.get_header_value("If-Match");
  if (value.starts_with("W/")) value = value.substr(2);
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::bad_request, "If-Match must carry a numeric revision");
  }
  return std::stoull(value);
}

json body_object(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json value = json::parse(req.body, nullptr, false);
  if (value.is_discarded() || !value.is_object()) throw Error(ErrorCode::bad_request, "body must be a JSON object");
  return value;
}

std::string required_string(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string()) {
    throw Error(ErrorCode::bad_request, std::string("'") + key + "' must be a string");
  }
  return body[key].get<std::string>();
}

std::set<SnippetId> targets_from(const json& body, const DashboardDocument& doc) {
  std::set<SnippetId> targets;
  const bool all = body.value("all", false);
  if (all) {
    for (const auto& [id, s] : doc.snippets) targets.insert(id);
    return targets;
  }
  if (!body.contains("targets") || !body["targets"].is_array()) {
    throw Error(ErrorCode::bad_request, "give 'targets' (array of snippet ids) or 'all': true");
  }
  for (const auto& t : body["targets"]) {
    if (!t.is_string()) throw Error(ErrorCode::bad_request, "targets must be strings");
    targets.insert(t.get<std::string>());
  }
  return targets;
}

}  // namespace

struct ApiServer::Impl {
  DocumentStore& store;
  TextGenerator& generator;
  DataTables tables;
  GenerationConfig generation;
  httplib::Server server;

  Impl(DocumentStore& s, TextGenerator& g, DataTables t, GenerationConfig c)
      : store(s), generator(g), tables(std::move(t)), generation(std::move(c)) {}

  // Wraps a handler so engine errors become problem responses.
  template <typename F>
  httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const Error& e) {
        send_problem(res, e.code(), e.what());
      } catch (const std::exception& e) {
        send_problem(res, ErrorCode::bad_request, e.what());
      }
    };
  }

  // Mutation helper: applies `change`, answers with `view(doc)` and the new ETag.
  template <typename Change>
  void mutate(const httplib::Request& req, httplib::Response& res, Change change, int status = 200) {
    json result;
    const Snapshot snap = store.update(req.matches[1], if_match(req),
                                       [&](DashboardDocument& doc) { result = change(doc); });
    set_revision(res, snap.revision);
    send_json(res, result, status);
  }

  void send_document(httplib::Response& res, const Snapshot& snap, int status = 200) {
    res.status = status;
    set_revision(res, snap.revision);
    res.set_content(snap.bytes, kJson);
  }

  void routes() {
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, {{"status", "ok"}});
    });

    server.Post("/documents", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_object(req);
      std::string id;
      if (body.contains("id")) id = required_string(body, "id");
      if (!id.empty() && !DocumentStore::valid_id(id)) throw Error(ErrorCode::bad_request, "invalid document id");
      Rect geometry = kDefaultRootGeometry;
      if (body.contains("geometry")) geometry = rect_from_request(body["geometry"]);
      DashboardDocument doc = create_document(id, geometry);
      send_document(res, store.create(doc), 201);
    }));

    server.Get(kDoc, guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_document(res, store.get(req.matches[1]));
    }));

    server.Put(kDoc, guarded([this](const httplib::Request& req, httplib::Response& res) {
      DashboardDocument doc = load(req.body);
      if (doc.id != req.matches[1]) {
        throw Error(ErrorCode::bad_request, "document id '" + doc.id + "' does not match the URL");
      }
      send_document(res, store.put(doc, if_match(req)));
    }));

    server.Post(route("/frames"), guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_object(req);
      mutate(req, res, [&](DashboardDocument& doc) {
        const FrameId parent = body.contains("parent") ? required_string(body, "parent") : doc.root;
        const FrameId id = add_frame(doc, parent, rect_from_request(body.value("geometry", json())));
        json out = to_json(doc.frames.at(id));
        out["id"] = id;
        return out;
      }, 201);
    }));

    server.Patch(route("/frames/([A-Za-z0-9_-]+)"),
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_object(req);
      const FrameId frame = req.matches[2];
      mutate(req, res, [&](DashboardDocument& doc) {
        const Frame& current = get_frame(doc, frame);
        if (!current.parent) throw Error(ErrorCode::cannot_move_root, "the root frame cannot move");
        const FrameId parent = body.contains("parent") ? required_string(body, "parent") : *current.parent;
        const Rect geometry = body.contains("geometry") ? rect_from_request(body["geometry"]) : current.geometry;
        move_frame(doc, frame, parent, geometry);
        json out = to_json(doc.frames.at(frame));
        out["id"] = frame;
        return out;
      });
    }));

    server.Post(route("/charts"), guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_object(req);
      mutate(req, res, [&](DashboardDocument& doc) {
        const FrameId frame = required_string(body, "frame");
        if (!body.contains("spec")) throw Error(ErrorCode::bad_request, "'spec' is required");
        std::string svg = body.contains("rendered_svg") ? required_string(body, "rendered_svg") : "";
        std::optional<std::string> hint;
        if (body.contains("title_hint")) hint = required_string(body, "title_hint");
        const ChartId id = body["spec"].is_string()
                               ? add_chart(doc, frame, body["spec"].get<std::string>(), std::move(svg), hint)
                               : add_chart_spec(doc, frame, body["spec"], std::move(svg), hint);
        return json{{"id", id}, {"frame", frame}};
      }, 201);
    }));

    server.Post(route("/snippets"), guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_object(req);
      mutate(req, res, [&](DashboardDocument& doc) {
        const FrameId frame = required_string(body, "frame");
        const TextRole role = role_from_request(body.value("role", json()));
        SnippetState state = SnippetState::placeholder;
        if (body.contains("state")) {
          auto parsed = parse_state(required_string(body, "state"));
          if (!parsed) throw Error(ErrorCode::bad_request, "unknown state");
          state = *parsed;
        } else if (body.contains("content")) {
          state = SnippetState::locked;
        }
        std::string content = body.contains("content") ? required_string(body, "content")
                                                        : std::string(placeholder_text(role));
        std::optional<Styling> styling;
        if (body.contains("styling")) styling = styling_from_request(body["styling"]);
        const SnippetId id = add_snippet(doc, frame, role, std::move(content), state, styling);
        return snippet_view(doc, id);
      }, 201);
    }));

    server.Patch(route("/snippets/([A-Za-z0-9_-]+)"),
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_object(req);
      const SnippetId id = req.matches[2];
      mutate(req, res, [&](DashboardDocument& doc) {
        get_snippet(doc, id);
        if (body.contains("role")) set_role(doc, id, role_from_request(body["role"]));
        if (body.contains("content")) edit_snippet(doc, id, required_string(body, "content"));
        if (body.contains("locked")) {
          if (!body["locked"].is_boolean()) throw Error(ErrorCode::bad_request, "'locked' must be a boolean");
          set_locked(doc, id, body["locked"].get<bool>());
        }
        if (body.contains("styling")) set_styling(doc, id, styling_from_request(body["styling"]));
        if (body.contains("facts")) set_facts(doc, id, facts_from_request(body["facts"]));
        return snippet_view(doc, id);
      });
    }));

    server.Delete(route("/snippets/([A-Za-z0-9_-]+)"),
                  guarded([this](const httplib::Request& req, httplib::Response& res) {
      const SnippetId id = req.matches[2];
      mutate(req, res, [&](DashboardDocument& doc) {
        remove_snippet(doc, id);
        return json{{"deleted", id}};
      });
    }));

    server.Get(route("/suggestions"), guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Snapshot snap = store.get(req.matches[1]);
      set_revision(res, snap.revision);
      send_json(res, suggestions_json(all_suggestions(*snap.doc, tables.rules)));
    }));

    server.Post(route("/suggestions/accept-all"),
                guarded([this](const httplib::Request& req, httplib::Response& res) {
      mutate(req, res, [&](DashboardDocument& doc) { return json{{"created", accept_all(doc, tables.rules)}}; });
    }));

    server.Post(route("/suggestions/([A-Za-z_]+)/accept"),
                guarded([this](const httplib::Request& req, httplib::Response& res) {
      const SuggestionId id = req.matches[2];
      mutate(req, res, [&](DashboardDocument& doc) {
        return json{{"created", accept_suggestion(doc, id, tables.rules)}};
      });
    }));

    server.Post(route("/suggestions/([A-Za-z_]+)/dismiss"),
                guarded([this](const httplib::Request& req, httplib::Response& res) {
      const SuggestionId id = req.matches[2];
      mutate(req, res, [&](DashboardDocument& doc) {
        dismiss_suggestion(doc, id);
        return json{{"dismissed", id}};
      });
    }));

    server.Get(route("/snippets/([A-Za-z0-9_-]+)/metrics"),
               guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Snapshot snap = store.get(req.matches[1]);
      set_revision(res, snap.revision);
      send_json(res, metrics_json(*snap.doc, req.matches[2], tables));
    }));

    server.Get(route("/snippets/([A-Za-z0-9_-]+)/highlight"),
               guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Snapshot snap = store.get(req.matches[1]);
      set_revision(res, snap.revision);
      send_json(res, {{"snippet", req.matches[2]}, {"frames", highlight_set(*snap.doc, req.matches[2])}});
    }));

    server.Post(route("/generate"), guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_object(req);
      if (body.value("dry_run", false)) {
        const Snapshot snap = store.get(req.matches[1]);
        set_revision(res, snap.revision);
        send_json(res, {{"plan", plan_json(generation_plan(*snap.doc, targets_from(body, *snap.doc)))}});
        return;
      }
      mutate(req, res, [&](DashboardDocument& doc) {
        return report_json(generate_all(doc, targets_from(body, doc), generator, tables, generation));
      });
    }));

    server.Post(route("/snippets/([A-Za-z0-9_-]+)/refine"),
                guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = body_object(req);
      const SnippetId id = req.matches[2];
      const auto kind = parse_refine_kind(required_string(body, "kind"));
      if (!kind) throw Error(ErrorCode::bad_request, "kind must be regenerate, shorten or simplify");
      mutate(req, res, [&](DashboardDocument& doc) {
        refine(doc, id, *kind, generator, tables, generation);
        return snippet_view(doc, id);
      });
    }));
  }
};

ApiServer::ApiServer(DocumentStore& store, TextGenerator& generator, DataTables tables, GenerationConfig generation)
    : impl_(std::make_unique<Impl>(store, generator, std::move(tables), std::move(generation))) {
  impl_->routes();
}

ApiServer::~ApiServer() = default;

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ApiServer::run() { return impl_->server.listen_after_bind(); }

void ApiServer::stop() { impl_->server.stop(); }

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace dashtext
