#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyrep {

/// A single term occurrence in document order.
struct Token {
  std::string term;
  std::size_t char_offset = 0;
  bool in_title = false;
  bool in_emphasis = false;
  bool in_link = false;  // inside one of the document's own <a> elements

  bool operator==(const Token&) const = default;
};

using TokenStream = std::vector<Token>;

/// The bundled English stopword list.
const std::set<std::string, std::less<>>& default_stopwords();

struct TokenizerOptions {
  std::set<std::string, std::less<>> stopwords = default_stopwords();
  bool stem = false;
};

/// Lowercases, splits on non-alphanumerics, drops pure-digit and
/// single-character tokens, then applies stopwords and optional stemming.
/// Non-ASCII letters count as word characters; Unicode punctuation and
/// spaces such as U+00A0 or U+2014 separate words.
class Tokenizer {
 public:
  Tokenizer() = default;
  explicit Tokenizer(TokenizerOptions options) : options_(std::move(options)) {}

  std::vector<std::string> tokenize(std::string_view text) const;

  /// Same as tokenize() but also reports each term's byte offset in `text`.
  std::vector<std::pair<std::string, std::size_t>> tokenize_with_offsets(
      std::string_view text) const;

  const TokenizerOptions& options() const noexcept { return options_; }

 private:
  TokenizerOptions options_;
};

/// Light suffix stripper used when stemming is switched on.
std::string strip_suffix(std::string term);

/// Reads a stopword file: one word per line, `#` comments allowed.
std::set<std::string, std::less<>> load_stopwords(const std::string& path);

}  // namespace fuzzyrep
