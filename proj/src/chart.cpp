#include "dashtext/chart.hpp"

#include <cctype>
#include <vector>

#include "dashtext/error.hpp"

namespace dashtext {
namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '-' || c == '_' ||
         c == '.' || static_cast<unsigned char>(c) >= 0x80;
}

bool starts_with(std::string_view text, std::size_t pos, std::string_view prefix) {
  return text.substr(pos, prefix.size()) == prefix;
}

}  // namespace

nlohmann::json parse_chart_spec(std::string_view text) {
  nlohmann::json spec = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (spec.is_discarded()) throw Error(ErrorCode::malformed_spec, "chart spec is not valid JSON");
  if (!spec.is_object()) throw Error(ErrorCode::malformed_spec, "chart spec must be a JSON object");
  return spec;
}

bool is_well_formed_markup(std::string_view text) {
  std::vector<std::string_view> open;
  bool saw_element = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    if (starts_with(text, i, "<!--")) {
      auto end = text.find("-->", i + 4);
      if (end == std::string_view::npos) return false;
      i = end + 3;
    } else if (starts_with(text, i, "<![CDATA[")) {
      auto end = text.find("]]>", i + 9);
      if (end == std::string_view::npos) return false;
      i = end + 3;
    } else if (starts_with(text, i, "<?")) {
      auto end = text.find("?>", i + 2);
      if (end == std::string_view::npos) return false;
      i = end + 2;
    } else if (starts_with(text, i, "<!")) {
      auto end = text.find('>', i + 2);
      if (end == std::string_view::npos) return false;
      i = end + 1;
    } else if (starts_with(text, i, "</")) {
      std::size_t start = i + 2;
      std::size_t j = start;
      while (j < text.size() && is_name_char(text[j])) ++j;
      std::string_view name = text.substr(start, j - start);
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j >= text.size() || text[j] != '>') return false;
      if (open.empty() || open.back() != name) return false;
      open.pop_back();
      i = j + 1;
    } else {
      std::size_t start = i + 1;
      std::size_t j = start;
      while (j < text.size() && is_name_char(text[j])) ++j;
      if (j == start) return false;
      std::string_view name = text.substr(start, j - start);
      bool self_closing = false;
      for (;;) {
        if (j >= text.size()) return false;
        char c = text[j];
        if (c == '"' || c == '\'') {
          auto close = text.find(c, j + 1);
          if (close == std::string_view::npos) return false;
          j = close + 1;
        } else if (c == '<') {
          return false;
        } else if (c == '/' && j + 1 < text.size() && text[j + 1] == '>') {
          self_closing = true;
          j += 2;
          break;
        } else if (c == '>') {
          ++j;
          break;
        } else {
          ++j;
        }
      }
      // A second top-level element.
      if (open.empty() && saw_element) return false;
      saw_element = true;
      if (!self_closing) open.push_back(name);
      i = j;
    }
  }
  return saw_element && open.empty();
}

bool has_interaction_bindings(const nlohmann::json& spec) {
  if (spec.is_object()) {
    if (auto it = spec.find("selection"); it != spec.end() && it->is_object() && !it->empty()) {
      return true;
    }
    if (auto it = spec.find("params"); it != spec.end() && it->is_array()) {
      for (const auto& param : *it) {
        if (param.is_object() && (param.contains("select") || param.contains("bind"))) return true;
      }
    }
    for (const auto& [key, value] : spec.items()) {
      if (has_interaction_bindings(value)) return true;
    }
  } else if (spec.is_array()) {
    for (const auto& value : spec) {
      if (has_interaction_bindings(value)) return true;
    }
  }
  return false;
}

std::string truncate_svg(std::string_view svg, std::size_t budget) {
  if (svg.size() <= budget) return std::string(svg);
  if (budget < kSvgTruncationMarker.size()) return {};
  const std::size_t limit = budget - kSvgTruncationMarker.size();
  std::size_t cut = svg.rfind('<', limit);
  if (cut == std::string_view::npos) cut = 0;
  std::string out(svg.substr(0, cut));
  out += kSvgTruncationMarker;
  return out;
}

}  // namespace dashtext
