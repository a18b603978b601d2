#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dashtext/data_tables.hpp"
#include "dashtext/types.hpp"

namespace dashtext {

// Word tokens: letters, digits and non-punctuation code points. Hyphens and
// other punctuation separate words; an apostrophe between letters and a '.' or
// ',' between digits stay inside the token. Curly apostrophes become "'".
std::vector<std::string> tokenize_words(std::string_view text);
std::string detokenize(const std::vector<std::string>& tokens);

struct SentenceSpan {
  std::size_t begin = 0;  // byte offsets into the input
  std::size_t end = 0;

  friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

// Splits after . ! ? when followed by whitespace and a capital letter, or by
// the end of the text. Known abbreviations ("e.g.", "vs.", "Dr.") never end a
// sentence. Spans without words are dropped.
std::vector<SentenceSpan> split_sentences(std::string_view text);

// Vowel-group heuristic, at least 1. Tokens without Latin letters count as 1.
int count_syllables(std::string_view word);

// Percentage of tokens outside the stopword list. Throws empty-text.
double lexical_density(std::string_view text, const StopwordList& stopwords = default_stopword_list());

// 0.39 * words/sentences + 11.8 * syllables/words - 15.59, unclamped. Throws empty-text.
double fk_grade(std::string_view text);

struct MetricsReport {
  int word_count = 0;
  int sentence_count = 0;
  int syllable_count = 0;
  double lexical_density = 0.0;  // percent
  double fk_grade = 0.0;
};

// Zero words yield a zero report instead of an error.
MetricsReport measure_text(std::string_view text, const StopwordList& stopwords = default_stopword_list());

// Throws placeholder-not-analyzable for placeholder snippets.
MetricsReport analyze(const DashboardDocument& doc, const SnippetId& snippet,
                      const StopwordList& stopwords = default_stopword_list());

enum class Conformance { below, within, above };
std::string_view to_string(Conformance conformance) noexcept;

struct ConformanceReport {
  Conformance word_count = Conformance::within;
  Conformance fk_grade = Conformance::within;
  Conformance lexical_density = Conformance::within;
};

Conformance compare_to_range(double value, const Range& range) noexcept;
ConformanceReport conformance(const MetricsReport& report, const RoleGuideline& guideline);

}  // namespace dashtext
