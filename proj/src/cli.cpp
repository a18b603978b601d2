#include "dashtext/cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dashtext/config.hpp"
#include "dashtext/document.hpp"
#include "dashtext/http_api.hpp"
#include "dashtext/serialization.hpp"
#include "dashtext/suggestions.hpp"
#include "dashtext/views.hpp"

namespace dashtext {

using nlohmann::json;

namespace {

ApiServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

DashboardDocument read_document(const std::string& path) { return load(read_text_file(path)); }

void write_document(const std::string& path, const DashboardDocument& doc) {
  const std::string bytes = save(doc);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw Error(ErrorCode::bad_request, "cannot write '" + path + "'");
  }
  std::filesystem::rename(tmp, path);
}

Rect parse_geometry(const std::string& text) {
  Rect r;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream in(text);
  if (!(in >> r.x >> c1 >> r.y >> c2 >> r.width >> c3 >> r.height) || c1 != ',' || c2 != ',' || c3 != ',' ||
      !in.eof()) {
    throw Error(ErrorCode::bad_request, "geometry must be x,y,width,height");
  }
  return r;
}

TextRole parse_role_arg(const std::string& name) {
  auto role = parse_role(name);
  if (!role) throw Error(ErrorCode::bad_request, "unknown role '" + name + "'");
  return *role;
}

std::set<SnippetId> split_targets(const std::string& list) {
  std::set<SnippetId> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

std::string fixed(double value, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << value;
  return s.str();
}

struct Options {
  std::string config_path;
  std::string file;
  std::string id;
  double width = kDefaultRootGeometry.width;
  double height = kDefaultRootGeometry.height;
  std::string role;
  bool all = false;
  std::string snippet;
  std::string frame;
  std::string parent;
  std::string geometry;
  std::string spec_path;
  std::string svg_path;
  std::string title_hint;
  std::string content;
  std::string state;
  std::vector<std::string> facts;
  std::string targets;
  std::string kind;
  bool mock = false;
  bool as_json = false;
  std::string canned;
  std::string transcript;
  int concurrency = 0;
  std::string host;
  int port = -1;
  std::string store;
};

ServiceConfig service_config(const Options& o) {
  ServiceConfig config;
  if (!o.config_path.empty()) {
    config = load_config(o.config_path);
  } else {
    config.mode = GeneratorMode::live;
  }
  if (o.mock) config.mode = GeneratorMode::mock;
  if (!o.canned.empty()) config.canned_dir = o.canned;
  if (!o.transcript.empty()) config.transcript = o.transcript;
  if (o.concurrency > 0) config.generation.concurrency = static_cast<std::size_t>(o.concurrency);
  if (!o.host.empty()) config.host = o.host;
  if (o.port >= 0) config.port = o.port;
  if (!o.store.empty()) config.store = o.store;
  return config;
}

DataTables tables_for(const Options& o) {
  if (o.config_path.empty()) return DataTables::defaults();
  return DataTables::load(load_config(o.config_path).data);
}

void print_suggestions(std::ostream& out, const std::vector<Suggestion>& list) {
  for (const auto& s : list) {
    out << std::left << std::setw(16) << s.id << std::setw(10) << to_string(s.status) << s.title << "\n";
  }
}

void print_metrics_row(std::ostream& out, const DashboardDocument& doc, const SnippetId& id, const DataTables& t) {
  const TextSnippet& s = get_snippet(doc, id);
  out << std::left << std::setw(14) << id << std::setw(12) << to_string(s.role);
  if (s.state == SnippetState::placeholder) {
    out << "placeholder\n";
    return;
  }
  const json m = metrics_json(doc, id, t);
  const json& v = m["metrics"];
  const json& c = m["conformance"];
  out << std::right << std::setw(6) << v["word_count"].get<int>() << std::setw(10)
      << fixed(v["lexical_density"].get<double>(), 1) << std::setw(8) << fixed(v["fk_grade"].get<double>(), 2)
      << "  " << c["word_count"].get<std::string>() << "/" << c["lexical_density"].get<std::string>() << "/"
      << c["fk_grade"].get<std::string>() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dashboard text authoring engine", "dashtext"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON config file (generator, data files, listen address)");

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "Document file")->required(); };
  auto snippet_opt = [&](CLI::App* sub) { sub->add_option("--snippet", o.snippet, "Snippet id")->required(); };
  auto port_opts = [&](CLI::App* sub) {
    sub->add_flag("--mock", o.mock, "Use the deterministic mock generator");
    sub->add_option("--canned", o.canned, "Directory of canned mock responses");
    sub->add_option("--transcript", o.transcript, "Append prompts and responses to this file");
    sub->add_option("--concurrency", o.concurrency, "Parallel generator calls within a level");
  };

  auto* cmd_new = app.add_subcommand("new", "Create an empty document");
  file_arg(cmd_new);
  cmd_new->add_option("--id", o.id, "Document id (random when omitted)");
  cmd_new->add_option("--width", o.width, "Root frame width");
  cmd_new->add_option("--height", o.height, "Root frame height");

  auto* cmd_validate = app.add_subcommand("validate", "Check a document file");
  file_arg(cmd_validate);

  auto* cmd_suggest = app.add_subcommand("suggest", "List suggestions");
  file_arg(cmd_suggest);
  cmd_suggest->add_flag("--json", o.as_json, "JSON output");

  auto* cmd_accept = app.add_subcommand("accept", "Accept a role suggestion");
  file_arg(cmd_accept);
  auto* role_opt = cmd_accept->add_option("--role", o.role, "Role to accept");
  auto* all_flag = cmd_accept->add_flag("--all", o.all, "Accept every pending role suggestion");
  role_opt->excludes(all_flag);

  auto* cmd_dismiss = app.add_subcommand("dismiss", "Dismiss a suggestion");
  file_arg(cmd_dismiss);
  cmd_dismiss->add_option("--id", o.id, "Suggestion id")->required();

  auto* cmd_add_frame = app.add_subcommand("add-frame", "Add a frame");
  file_arg(cmd_add_frame);
  cmd_add_frame->add_option("--parent", o.parent, "Parent frame (root when omitted)");
  cmd_add_frame->add_option("--geometry", o.geometry, "x,y,width,height")->required();

  auto* cmd_add_chart = app.add_subcommand("add-chart", "Attach a chart to a frame");
  file_arg(cmd_add_chart);
  cmd_add_chart->add_option("--frame", o.frame, "Frame id")->required();
  cmd_add_chart->add_option("--spec", o.spec_path, "Chart specification JSON file")->required();
  cmd_add_chart->add_option("--svg", o.svg_path, "Rendered SVG file");
  cmd_add_chart->add_option("--title-hint", o.title_hint, "Title hint");

  auto* cmd_add_snippet = app.add_subcommand("add-snippet", "Add a snippet");
  file_arg(cmd_add_snippet);
  cmd_add_snippet->add_option("--frame", o.frame, "Frame id")->required();
  cmd_add_snippet->add_option("--role", o.role, "Text role")->required();
  cmd_add_snippet->add_option("--content", o.content, "Text (placeholder when omitted)");

  auto* cmd_edit = app.add_subcommand("edit", "Replace snippet text (locks it)");
  file_arg(cmd_edit);
  snippet_opt(cmd_edit);
  cmd_edit->add_option("--content", o.content, "New text")->required();

  auto* cmd_lock = app.add_subcommand("lock", "Lock a snippet");
  file_arg(cmd_lock);
  snippet_opt(cmd_lock);
  auto* cmd_unlock = app.add_subcommand("unlock", "Unlock a snippet");
  file_arg(cmd_unlock);
  snippet_opt(cmd_unlock);

  auto* cmd_remove = app.add_subcommand("remove-snippet", "Delete a snippet");
  file_arg(cmd_remove);
  snippet_opt(cmd_remove);

  auto* cmd_facts = app.add_subcommand("set-facts", "Set metadata facts");
  file_arg(cmd_facts);
  snippet_opt(cmd_facts);
  cmd_facts->add_option("--fact", o.facts, "key=value (repeatable)")->required();

  auto* cmd_move = app.add_subcommand("move-frame", "Move or resize a frame");
  file_arg(cmd_move);
  cmd_move->add_option("--frame", o.frame, "Frame id")->required();
  cmd_move->add_option("--parent", o.parent, "New parent (current parent when omitted)");
  cmd_move->add_option("--geometry", o.geometry, "x,y,width,height")->required();

  auto* cmd_highlight = app.add_subcommand("highlight", "Frames feeding a snippet");
  file_arg(cmd_highlight);
  snippet_opt(cmd_highlight);

  auto* cmd_metrics = app.add_subcommand("metrics", "Readability metrics");
  file_arg(cmd_metrics);
  auto* metric_snippet = cmd_metrics->add_option("--snippet", o.snippet, "Snippet id");
  auto* metric_all = cmd_metrics->add_flag("--all", o.all, "Every snippet");
  metric_snippet->excludes(metric_all);
  cmd_metrics->add_flag("--json", o.as_json, "JSON output");

  auto* cmd_plan = app.add_subcommand("plan", "Show the generation order without running it");
  file_arg(cmd_plan);
  auto* plan_targets = cmd_plan->add_option("--targets", o.targets, "Comma-separated snippet ids");
  auto* plan_all = cmd_plan->add_flag("--all", o.all, "Every snippet");
  plan_targets->excludes(plan_all);

  auto* cmd_generate = app.add_subcommand("generate", "Generate text");
  file_arg(cmd_generate);
  auto* gen_targets = cmd_generate->add_option("--targets", o.targets, "Comma-separated snippet ids");
  auto* gen_all = cmd_generate->add_flag("--all", o.all, "Every snippet");
  gen_targets->excludes(gen_all);
  port_opts(cmd_generate);

  auto* cmd_refine = app.add_subcommand("refine", "Regenerate, shorten or simplify a snippet");
  file_arg(cmd_refine);
  snippet_opt(cmd_refine);
  cmd_refine->add_option("--kind", o.kind, "regenerate | shorten | simplify")->required();
  port_opts(cmd_refine);

  auto* cmd_serve = app.add_subcommand("serve", "Run the HTTP API");
  cmd_serve->add_option("--host", o.host, "Listen address");
  cmd_serve->add_option("--port", o.port, "Listen port (0 picks one)");
  cmd_serve->add_option("--store", o.store, "Document directory");
  port_opts(cmd_serve);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", code_name(ErrorCode::bad_request)}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (cmd_new->parsed()) {
      DashboardDocument doc = create_document(o.id, {0, 0, o.width, o.height});
      write_document(o.file, doc);
      out << doc.id << "\n";
    } else if (cmd_validate->parsed()) {
      read_document(o.file);
      out << "ok\n";
    } else if (cmd_suggest->parsed()) {
      const auto list = all_suggestions(read_document(o.file), tables_for(o).rules);
      if (o.as_json) {
        out << suggestions_json(list).dump(2) << "\n";
      } else {
        print_suggestions(out, list);
      }
    } else if (cmd_accept->parsed()) {
      if (o.role.empty() && !o.all) throw Error(ErrorCode::bad_request, "give --role or --all");
      DashboardDocument doc = read_document(o.file);
      const DataTables tables = tables_for(o);
      const auto created = o.all ? accept_all(doc, tables.rules) : accept_suggestion(doc, o.role, tables.rules);
      write_document(o.file, doc);
      for (const auto& id : created) out << id << "\n";
    } else if (cmd_dismiss->parsed()) {
      DashboardDocument doc = read_document(o.file);
      dismiss_suggestion(doc, o.id);
      write_document(o.file, doc);
    } else if (cmd_add_frame->parsed()) {
      DashboardDocument doc = read_document(o.file);
      const FrameId id = add_frame(doc, o.parent.empty() ? doc.root : o.parent, parse_geometry(o.geometry));
      write_document(o.file, doc);
      out << id << "\n";
    } else if (cmd_add_chart->parsed()) {
      DashboardDocument doc = read_document(o.file);
      const std::string svg = o.svg_path.empty() ? "" : read_text_file(o.svg_path);
      std::optional<std::string> hint;
      if (!o.title_hint.empty()) hint = o.title_hint;
      const ChartId id = add_chart(doc, o.frame, read_text_file(o.spec_path), svg, hint);
      write_document(o.file, doc);
      out << id << "\n";
    } else if (cmd_add_snippet->parsed()) {
      DashboardDocument doc = read_document(o.file);
      const TextRole role = parse_role_arg(o.role);
      const bool has_text = cmd_add_snippet->count("--content") > 0;
      const SnippetId id =
          add_snippet(doc, o.frame, role, has_text ? o.content : std::string(placeholder_text(role)),
                      has_text ? SnippetState::locked : SnippetState::placeholder);
      write_document(o.file, doc);
      out << id << "\n";
    } else if (cmd_edit->parsed()) {
      DashboardDocument doc = read_document(o.file);
      edit_snippet(doc, o.snippet, o.content);
      write_document(o.file, doc);
    } else if (cmd_lock->parsed() || cmd_unlock->parsed()) {
      DashboardDocument doc = read_document(o.file);
      set_locked(doc, o.snippet, cmd_lock->parsed());
      write_document(o.file, doc);
    } else if (cmd_remove->parsed()) {
      DashboardDocument doc = read_document(o.file);
      remove_snippet(doc, o.snippet);
      write_document(o.file, doc);
    } else if (cmd_facts->parsed()) {
      DashboardDocument doc = read_document(o.file);
      std::map<std::string, std::string> facts;
      for (const auto& f : o.facts) {
        const auto eq = f.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::bad_request, "facts look like key=value");
        facts[f.substr(0, eq)] = f.substr(eq + 1);
      }
      set_facts(doc, o.snippet, std::move(facts));
      write_document(o.file, doc);
    } else if (cmd_move->parsed()) {
      DashboardDocument doc = read_document(o.file);
      const Frame& frame = get_frame(doc, o.frame);
      if (!frame.parent) throw Error(ErrorCode::cannot_move_root, "the root frame cannot move");
      move_frame(doc, o.frame, o.parent.empty() ? *frame.parent : o.parent, parse_geometry(o.geometry));
      write_document(o.file, doc);
    } else if (cmd_highlight->parsed()) {
      for (const auto& id : highlight_set(read_document(o.file), o.snippet)) out << id << "\n";
    } else if (cmd_metrics->parsed()) {
      const DashboardDocument doc = read_document(o.file);
      const DataTables tables = tables_for(o);
      if (!o.all && o.snippet.empty()) throw Error(ErrorCode::bad_request, "give --snippet or --all");
      std::vector<SnippetId> ids = o.all ? snippets_in_reading_order(doc) : std::vector<SnippetId>{o.snippet};
      if (o.as_json) {
        json rows = json::array();
        for (const auto& id : ids) {
          if (o.all && doc.snippets.at(id).state == SnippetState::placeholder) continue;
          rows.push_back(metrics_json(doc, id, tables));
        }
        out << (o.all ? rows : rows.at(0)).dump(2) << "\n";
      } else {
        if (!o.all && get_snippet(doc, o.snippet).state == SnippetState::placeholder) analyze(doc, o.snippet);
        out << std::left << std::setw(14) << "snippet" << std::setw(12) << "role" << std::right << std::setw(6)
            << "words" << std::setw(10) << "density" << std::setw(8) << "grade"
            << "  conformance (words/density/grade)\n";
        for (const auto& id : ids) print_metrics_row(out, doc, id, tables);
      }
    } else if (cmd_plan->parsed()) {
      const DashboardDocument doc = read_document(o.file);
      std::set<SnippetId> targets = split_targets(o.targets);
      if (o.all) {
        for (const auto& [id, s] : doc.snippets) targets.insert(id);
      }
      out << plan_json(generation_plan(doc, targets)).dump(2) << "\n";
    } else if (cmd_generate->parsed()) {
      if (o.targets.empty() && !o.all) throw Error(ErrorCode::bad_request, "give --targets or --all");
      const ServiceConfig config = service_config(o);
      auto generator = make_generator(config);
      DashboardDocument doc = read_document(o.file);
      std::set<SnippetId> targets = split_targets(o.targets);
      if (o.all) {
        for (const auto& [id, s] : doc.snippets) targets.insert(id);
      }
      const GenerationReport report =
          generate_all(doc, targets, *generator, DataTables::load(config.data), config.generation);
      write_document(o.file, doc);
      out << report_json(report).dump(2) << "\n";
      if (report.failed() > 0) {
        err << json{{"error", code_name(ErrorCode::generation_failed)},
                    {"message", std::to_string(report.failed()) + " snippet(s) were not generated"}}
                   .dump()
            << "\n";
        return 1;
      }
    } else if (cmd_refine->parsed()) {
      const auto kind = parse_refine_kind(o.kind);
      if (!kind) throw Error(ErrorCode::bad_request, "kind must be regenerate, shorten or simplify");
      const ServiceConfig config = service_config(o);
      auto generator = make_generator(config);
      DashboardDocument doc = read_document(o.file);
      const std::string text = refine(doc, o.snippet, *kind, *generator, DataTables::load(config.data),
                                      config.generation);
      write_document(o.file, doc);
      out << text << "\n";
    } else if (cmd_serve->parsed()) {
      const ServiceConfig config = service_config(o);
      auto generator = make_generator(config);
      DocumentStore store(config.store);
      ApiServer server(store, *generator, DataTables::load(config.data), config.generation);
      const int port = server.bind(config.host, config.port);
      if (port < 0) {
        throw Error(ErrorCode::invalid_config,
                    "cannot listen on " + config.host + ":" + std::to_string(config.port));
      }
      out << "listening on http://" << config.host << ":" << port << " (" << to_string(config.mode)
          << " generator, store " << config.store.string() << ")" << std::endl;
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.run();
      g_server = nullptr;
    }
  } catch (const Error& e) {
    err << json{{"error", e.code_name()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace dashtext
