#include "dashtext/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>

#include "dashtext/document.hpp"
#include "dashtext/error.hpp"

namespace dashtext {
namespace {

struct CodePoint {
  char32_t value = 0;
  std::size_t begin = 0;
  std::size_t length = 1;
};

// Malformed sequences decode as U+FFFD one byte at a time.
std::vector<CodePoint> decode_utf8(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t length = 1;
    char32_t value = lead;
    if (lead >= 0xF0 && lead <= 0xF4) {
      length = 4;
      value = lead & 0x07;
    } else if (lead >= 0xE0) {
      length = 3;
      value = lead & 0x0F;
    } else if (lead >= 0xC2 && lead < 0xE0) {
      length = 2;
      value = lead & 0x1F;
    } else if (lead >= 0x80) {
      out.push_back({0xFFFD, i, 1});
      ++i;
      continue;
    }
    bool ok = i + length <= text.size();
    for (std::size_t k = 1; ok && k < length; ++k) {
      const auto next = static_cast<unsigned char>(text[i + k]);
      if ((next & 0xC0) != 0x80) ok = false;
      value = (value << 6) | (next & 0x3F);
    }
    if (!ok) {
      out.push_back({0xFFFD, i, 1});
      ++i;
      continue;
    }
    out.push_back({value, i, length});
    i += length;
  }
  return out;
}

bool is_ascii_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_digit(char32_t c) { return c >= '0' && c <= '9'; }

// Non-ASCII code points count as word characters unless they fall in a
// punctuation, symbol, space or emoji block.
bool is_word_char(char32_t c) {
  if (c < 0x80) return is_ascii_alpha(c) || is_ascii_digit(c);
  if (c == 0xFFFD) return false;
  if (c <= 0xBF) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;
  if (c >= 0x2E00 && c <= 0x2E7F) return false;
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0xFE00 && c <= 0xFE0F) return false;
  if (c >= 0xFE30 && c <= 0xFE4F) return false;
  if (c >= 0xFF00 && c <= 0xFF0F) return false;
  if (c >= 0xFF1A && c <= 0xFF20) return false;
  if (c >= 0xFF3B && c <= 0xFF40) return false;
  if (c >= 0xFF5B && c <= 0xFF65) return false;
  if (c >= 0x1F000 && c <= 0x1FAFF) return false;
  return true;
}

bool is_letter(char32_t c) { return is_word_char(c) && !is_ascii_digit(c); }
bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

constexpr std::array<std::string_view, 31> kAbbreviations = {
    "e.g.", "i.e.",  "vs.",  "cf.",  "etc.", "dr.",  "mr.",  "mrs.", "ms.",  "prof.",
    "sr.",  "jr.",   "st.",  "no.",  "fig.", "approx.", "inc.", "ltd.", "co.", "u.s.",
    "jan.", "feb.",  "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec.",
};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Bytes after a terminator cluster: "”" and "’" also close a sentence.
std::size_t skip_closers(std::string_view text, std::size_t i) {
  for (;;) {
    if (i < text.size() && is_closer(text[i])) {
      ++i;
    } else if (text.substr(i, 3) == "\xE2\x80\x9D" || text.substr(i, 3) == "\xE2\x80\x99") {
      i += 3;
    } else {
      return i;
    }
  }
}

bool ends_with_abbreviation(std::string_view text, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && !is_space(text[start - 1]) && text[start - 1] != '(' &&
         text[start - 1] != '"') {
    --start;
  }
  const std::string word = ascii_lower(text.substr(start, dot + 1 - start));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

bool has_word(std::string_view text) {
  for (const auto& cp : decode_utf8(text)) {
    if (is_word_char(cp.value)) return true;
  }
  return false;
}

void push_span(std::vector<SentenceSpan>& spans, std::string_view text, std::size_t begin,
               std::size_t end) {
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  if (begin < end && has_word(text.substr(begin, end - begin))) spans.push_back({begin, end});
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  const auto cps = decode_utf8(text);
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i].value;
    if (is_word_char(c)) {
      current.append(text.substr(cps[i].begin, cps[i].length));
      continue;
    }
    const bool has_prev = !current.empty() && i > 0;
    const bool has_next = i + 1 < cps.size();
    if (has_prev && has_next && is_apostrophe(c) && is_letter(cps[i - 1].value) &&
        is_letter(cps[i + 1].value)) {
      current.push_back('\'');
      continue;
    }
    if (has_prev && has_next && (c == '.' || c == ',') && is_ascii_digit(cps[i - 1].value) &&
        is_ascii_digit(cps[i + 1].value)) {
      current.push_back(static_cast<char>(c));
      continue;
    }
    flush();
  }
  flush();
  return tokens;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

std::vector<SentenceSpan> split_sentences(std::string_view text) {
  std::vector<SentenceSpan> spans;
  std::size_t begin = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    const std::size_t first = i;
    while (i < text.size() && is_terminator(text[i])) ++i;
    const std::size_t cluster_end = skip_closers(text, i);
    const bool single_dot = i - first == 1 && text[first] == '.';

    std::size_t next = cluster_end;
    while (next < text.size() && is_space(text[next])) ++next;
    bool boundary = false;
    if (next == text.size()) {
      boundary = true;
    } else if (next > cluster_end) {
      std::size_t look = next;
      while (look < text.size() && (text[look] == '"' || text[look] == '(' || text[look] == '\'')) {
        ++look;
      }
      if (text.substr(look, 3) == "\xE2\x80\x9C") look += 3;
      boundary = look < text.size() && text[look] >= 'A' && text[look] <= 'Z';
    }
    if (boundary && single_dot && ends_with_abbreviation(text, first)) boundary = false;
    if (boundary) {
      push_span(spans, text, begin, cluster_end);
      begin = cluster_end;
    }
    i = cluster_end;
  }
  push_span(spans, text, begin, text.size());
  return spans;
}

int count_syllables(std::string_view word) {
  std::string letters;
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') letters.push_back(static_cast<char>(c - 'A' + 'a'));
    else if (c >= 'a' && c <= 'z') letters.push_back(c);
  }
  if (letters.empty()) return 1;
  int groups = 0;
  bool in_group = false;
  for (char c : letters) {
    const bool vowel = is_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  const std::size_t n = letters.size();
  // Terminal "e" after a consonant is silent, except consonant + "le" ("table").
  if (n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2])) {
    const bool consonant_le = n >= 3 && letters[n - 2] == 'l' && !is_vowel(letters[n - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

double lexical_density(std::string_view text, const StopwordList& stopwords) {
  const auto tokens = tokenize_words(text);
  if (tokens.empty()) throw Error(ErrorCode::empty_text, "text has no words");
  std::size_t content = 0;
  for (const auto& token : tokens) {
    if (!stopwords.contains(ascii_lower(token))) ++content;
  }
  return 100.0 * static_cast<double>(content) / static_cast<double>(tokens.size());
}

double fk_grade(std::string_view text) {
  const auto tokens = tokenize_words(text);
  if (tokens.empty()) throw Error(ErrorCode::empty_text, "text has no words");
  const auto sentences = split_sentences(text).size();
  long syllables = 0;
  for (const auto& token : tokens) syllables += count_syllables(token);
  const double words = static_cast<double>(tokens.size());
  return 0.39 * (words / static_cast<double>(sentences)) +
         11.8 * (static_cast<double>(syllables) / words) - 15.59;
}

MetricsReport measure_text(std::string_view text, const StopwordList& stopwords) {
  MetricsReport report;
  const auto tokens = tokenize_words(text);
  report.word_count = static_cast<int>(tokens.size());
  if (tokens.empty()) return report;
  report.sentence_count = static_cast<int>(split_sentences(text).size());
  for (const auto& token : tokens) report.syllable_count += count_syllables(token);
  report.lexical_density = lexical_density(text, stopwords);
  report.fk_grade = fk_grade(text);
  return report;
}

MetricsReport analyze(const DashboardDocument& doc, const SnippetId& id,
                      const StopwordList& stopwords) {
  const TextSnippet& snippet = get_snippet(doc, id);
  if (snippet.state == SnippetState::placeholder) {
    throw Error(ErrorCode::placeholder_not_analyzable,
                "snippet '" + id + "' is a placeholder; write or generate text first");
  }
  return measure_text(snippet.content, stopwords);
}

std::string_view to_string(Conformance conformance) noexcept {
  switch (conformance) {
    case Conformance::below: return "below";
    case Conformance::within: return "within";
    case Conformance::above: return "above";
  }
  return "?";
}

Conformance compare_to_range(double value, const Range& range) noexcept {
  if (value < range.min) return Conformance::below;
  if (value > range.max) return Conformance::above;
  return Conformance::within;
}

ConformanceReport conformance(const MetricsReport& report, const RoleGuideline& guideline) {
  return {compare_to_range(report.word_count, guideline.word_range),
          compare_to_range(report.fk_grade, guideline.fk_range),
          compare_to_range(report.lexical_density, guideline.density_range)};
}

}  // namespace dashtext
