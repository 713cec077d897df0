#include "fuzzyrep/tokenizer.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

namespace {

bool is_ascii_word(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Length of the word character starting at text[i], or 0 for a separator.
// Non-ASCII code points are word characters except Latin-1 punctuation and
// symbols (U+00A0-U+00BF, U+00D7, U+00F7), General Punctuation
// (U+2000-U+206F) and the ideographic space.
std::size_t word_char_length(std::string_view text, std::size_t i) {
  const auto c = static_cast<unsigned char>(text[i]);
  if (c < 0x80) return is_ascii_word(c) ? 1 : 0;
  std::size_t len = 1;
  std::uint32_t cp = c;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
    cp = c & 0x07;
  }
  if (i + len > text.size()) return text.size() - i;
  for (std::size_t k = 1; k < len; ++k) {
    cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
  }
  const bool separator = (cp >= 0xA0 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 ||
                         (cp >= 0x2000 && cp <= 0x206F) || cp == 0x3000;
  return separator ? 0 : len;
}

std::size_t separator_length(std::string_view text, std::size_t i) {
  const auto c = static_cast<unsigned char>(text[i]);
  if (c < 0x80) return 1;
  std::size_t len = (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 1;
  return std::min(len, text.size() - i);
}

std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

bool all_digits(std::string_view s) {
  for (unsigned char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

const std::set<std::string, std::less<>>& default_stopwords() {
  static const std::set<std::string, std::less<>> words = {
      "a",        "about",   "above",   "after",   "again",   "against",
      "all",      "am",      "an",      "and",     "any",     "are",
      "aren",     "as",      "at",      "be",      "because", "been",
      "before",   "being",   "below",   "between", "both",    "but",
      "by",       "can",     "couldn",  "did",     "didn",    "do",
      "does",     "doesn",   "doing",   "don",     "down",    "during",
      "each",     "few",     "for",     "from",    "further", "had",
      "hadn",     "has",     "hasn",    "have",    "haven",   "having",
      "he",       "her",     "here",    "hers",    "herself", "him",
      "himself",  "his",     "how",     "if",      "in",      "into",
      "is",       "isn",     "it",      "its",     "itself",  "just",
      "ll",       "me",      "more",    "most",    "my",      "myself",
      "no",       "nor",     "not",     "of",      "off",
      "on",       "once",    "only",    "or",      "other",   "our",
      "ours",     "ourselves", "out",   "over",    "own",     "re",
      "same",     "she",     "should",  "shouldn", "so",      "some",
      "such",     "than",    "that",    "the",     "their",   "theirs",
      "them",     "themselves", "then", "there",   "these",   "they",
      "this",     "those",   "through", "to",      "too",     "under",
      "until",    "up",      "ve",      "very",    "was",     "wasn",
      "we",       "were",    "weren",   "what",    "when",    "where",
      "which",    "while",   "who",     "whom",    "why",     "will",
      "with",     "won",     "would",   "wouldn",  "you",     "your",
      "yours",    "yourself", "yourselves",
  };
  return words;
}

std::vector<std::pair<std::string, std::size_t>> Tokenizer::tokenize_with_offsets(
    std::string_view text) const {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && word_char_length(text, i) == 0) i += separator_length(text, i);
    const std::size_t start = i;
    while (i < text.size()) {
      const std::size_t len = word_char_length(text, i);
      if (len == 0) break;
      i += len;
    }
    if (start == i) break;

    std::string term(text.substr(start, i - start));
    for (char& c : term) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    if (codepoint_count(term) < 2 || all_digits(term)) continue;
    if (options_.stopwords.contains(term)) continue;
    if (options_.stem) {
      term = strip_suffix(std::move(term));
      if (codepoint_count(term) < 2) continue;
    }
    out.emplace_back(std::move(term), start);
  }
  return out;
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> terms;
  for (auto& [term, offset] : tokenize_with_offsets(text)) terms.push_back(std::move(term));
  return terms;
}

std::string strip_suffix(std::string term) {
  // Longest suffix first; the remaining stem must keep at least 3 bytes.
  static constexpr std::string_view kSuffixes[] = {"ational", "ations", "ation", "ness",
                                                   "ments",   "ment",   "ings",  "ing",
                                                   "edly",    "ies",    "ed",    "ly",
                                                   "es",      "s"};
  if (ends_with(term, "ss")) return term;
  for (std::string_view suffix : kSuffixes) {
    if (ends_with(term, suffix) && term.size() >= suffix.size() + 3) {
      term.resize(term.size() - suffix.size());
      if (suffix == "ies") term += 'y';
      return term;
    }
  }
  return term;
}

std::set<std::string, std::less<>> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file " + path);
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    for (char& c : word) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    words.insert(std::move(word));
  }
  return words;
}

}  // namespace fuzzyrep
