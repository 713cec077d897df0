#include "fuzzyrep/html.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && cp < 0x10000) || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (ascii_lower(s[pos + k]) != prefix[k]) return false;
  }
  return true;
}

bool is_void_element(std::string_view name) {
  static const TagSet kVoid = {"area", "base", "br",    "col",   "embed", "hr",  "img",
                               "input", "link", "meta", "param", "source", "track", "wbr"};
  return kVoid.contains(name);
}

// Elements whose content is raw text up to the matching end tag.
bool is_raw_text_element(std::string_view name) {
  return name == "script" || name == "style" || name == "title" || name == "textarea";
}

struct Tag {
  std::string name;
  bool closing = false;
  bool self_closing = false;
  std::size_t end = 0;  // index just past '>'
};

// Parses the tag starting at text[pos] == '<'. Returns false when this '<'
// does not start a tag and should be treated as text.
bool read_tag(std::string_view text, std::size_t pos, Tag& tag) {
  std::size_t i = pos + 1;
  if (i < text.size() && text[i] == '/') {
    tag.closing = true;
    ++i;
  }
  const std::size_t name_start = i;
  while (i < text.size()) {
    const char c = text[i];
    const bool name_char = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                           (c >= '0' && c <= '9') || c == '-' || c == ':' || c == '_';
    if (!name_char) break;
    ++i;
  }
  if (i == name_start) return false;
  const char first = text[name_start];
  if (!((first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z'))) return false;

  tag.name.clear();
  for (std::size_t k = name_start; k < i; ++k) tag.name += ascii_lower(text[k]);

  // Skip attributes, honouring quotes so '>' inside values is not a terminator.
  char quote = 0;
  char prev = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      tag.self_closing = prev == '/';
      tag.end = i + 1;
      return true;
    }
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') prev = c;
    ++i;
  }
  // unterminated tag: swallow the rest of the input
  tag.end = text.size();
  return true;
}

std::size_t find_end_tag(std::string_view text, std::size_t from, std::string_view name) {
  std::size_t i = from;
  while ((i = text.find('<', i)) != std::string_view::npos) {
    if (i + 1 < text.size() && text[i + 1] == '/' && starts_with_ci(text, i + 2, name)) {
      const std::size_t after = i + 2 + name.size();
      if (after >= text.size() || text[after] == '>' || text[after] == ' ' ||
          text[after] == '\t' || text[after] == '\n' || text[after] == '\r') {
        return i;
      }
    }
    ++i;
  }
  return text.size();
}

class StreamBuilder {
 public:
  StreamBuilder(const TagSet& emphasis, const Tokenizer& tokenizer)
      : emphasis_(emphasis), tokenizer_(tokenizer) {}

  void text(std::string_view raw, bool in_title) {
    const std::string decoded = decode_entities(raw);
    const bool in_emphasis = emphasis_depth_ > 0;
    const bool in_link = link_depth_ > 0;
    for (auto& [term, offset] : tokenizer_.tokenize_with_offsets(decoded)) {
      stream_.push_back({std::move(term), text_length_ + offset, in_title, in_emphasis, in_link});
    }
    text_length_ += decoded.size() + 1;
  }

  void open(const std::string& name) {
    open_.push_back(name);
    count(name, +1);
  }

  void close(std::string_view name) {
    const auto it = std::find(open_.rbegin(), open_.rend(), name);
    if (it == open_.rend()) return;  // stray end tag
    const auto keep = static_cast<std::size_t>(open_.rend() - it) - 1;
    while (open_.size() > keep) {
      count(open_.back(), -1);
      open_.pop_back();
    }
  }

  TokenStream take() { return std::move(stream_); }

 private:
  void count(std::string_view name, int delta) {
    if (emphasis_.contains(name)) emphasis_depth_ += delta;
    if (name == "a") link_depth_ += delta;
  }

  const TagSet& emphasis_;
  const Tokenizer& tokenizer_;
  std::vector<std::string> open_;
  int emphasis_depth_ = 0;
  int link_depth_ = 0;
  std::size_t text_length_ = 0;
  TokenStream stream_;
};

}  // namespace

const TagSet& default_emphasis_tags() {
  static const TagSet tags = {"em", "b",  "u",  "strong", "big", "h1",   "h2",
                              "h3", "h4", "h5", "h6",     "cite", "dfn", "i",
                              "blockquote"};
  return tags;
}

std::string decode_text(std::string_view raw) {
  if (raw.find('\0') != std::string_view::npos) {
    throw UndecodableInput("input contains NUL bytes");
  }
  if (raw.size() >= 3 && raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);
  if (valid_utf8(raw)) return std::string(raw);
  std::string out;
  out.reserve(raw.size() + raw.size() / 4);
  for (unsigned char c : raw) append_utf8(out, c);
  return out;
}

std::string decode_entities(std::string_view text) {
  static const std::map<std::string, std::uint32_t, std::less<>> kNamed = [] {
    std::map<std::string, std::uint32_t, std::less<>> m = {
        {"amp", '&'},      {"lt", '<'},       {"gt", '>'},       {"quot", '"'},
        {"apos", '\''},    {"ndash", 0x2013}, {"mdash", 0x2014}, {"lsquo", 0x2018},
        {"rsquo", 0x2019}, {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"hellip", 0x2026},
        {"bull", 0x2022},  {"euro", 0x20AC},  {"trade", 0x2122},
    };
    // U+00A0..U+00FF in code point order
    static constexpr const char* kLatin1[] = {
        "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar", "sect",
        "uml",    "copy",   "ordf",   "laquo",  "not",    "shy",    "reg",    "macr",
        "deg",    "plusmn", "sup2",   "sup3",   "acute",  "micro",  "para",   "middot",
        "cedil",  "sup1",   "ordm",   "raquo",  "frac14", "frac12", "frac34", "iquest",
        "Agrave", "Aacute", "Acirc",  "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil",
        "Egrave", "Eacute", "Ecirc",  "Euml",   "Igrave", "Iacute", "Icirc",  "Iuml",
        "ETH",    "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",   "times",
        "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",  "szlig",
        "agrave", "aacute", "acirc",  "atilde", "auml",   "aring",  "aelig",  "ccedil",
        "egrave", "eacute", "ecirc",  "euml",   "igrave", "iacute", "icirc",  "iuml",
        "eth",    "ntilde", "ograve", "oacute", "ocirc",  "otilde", "ouml",   "divide",
        "oslash", "ugrave", "uacute", "ucirc",  "uuml",   "yacute", "thorn",  "yuml",
    };
    for (std::uint32_t i = 0; i < std::size(kLatin1); ++i) m.emplace(kLatin1[i], 0xA0 + i);
    return m;
  }();
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += text[i++];
      continue;
    }
    const std::string_view body = text.substr(i + 1, semi - i - 1);
    std::uint32_t cp = 0;
    bool ok = false;
    if (!body.empty() && body[0] == '#') {
      const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
      const std::string_view digits = body.substr(hex ? 2 : 1);
      ok = !digits.empty();
      for (char c : digits) {
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        if (v < 0 || cp > 0x10FFFF) {
          ok = false;
          break;
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
      }
      if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) ok = false;
    } else if (const auto it = kNamed.find(body); it != kNamed.end()) {
      cp = it->second;
      ok = true;
    }
    if (!ok) {
      out += text[i++];
      continue;
    }
    append_utf8(out, cp);
    i = semi + 1;
  }
  return out;
}

TokenStream parse_html(std::string_view raw_bytes, const TagSet& emphasis_tags,
                       const Tokenizer& tokenizer) {
  const std::string text = decode_text(raw_bytes);
  const std::string_view src(text);
  StreamBuilder builder(emphasis_tags, tokenizer);

  std::size_t i = 0;
  std::size_t text_start = 0;
  auto flush = [&](std::size_t end) {
    if (end > text_start) builder.text(src.substr(text_start, end - text_start), false);
  };

  while (i < src.size()) {
    if (src[i] != '<') {
      ++i;
      continue;
    }
    if (src.compare(i, 4, "<!--") == 0) {
      flush(i);
      const std::size_t end = src.find("-->", i + 4);
      i = end == std::string_view::npos ? src.size() : end + 3;
      text_start = i;
      continue;
    }
    if (i + 1 < src.size() && (src[i + 1] == '!' || src[i + 1] == '?')) {
      flush(i);
      const std::size_t end = src.find('>', i + 2);
      i = end == std::string_view::npos ? src.size() : end + 1;
      text_start = i;
      continue;
    }
    Tag tag;
    if (!read_tag(src, i, tag)) {
      ++i;
      continue;
    }
    flush(i);
    i = tag.end;
    text_start = i;
    if (tag.closing) {
      builder.close(tag.name);
      continue;
    }
    if (is_raw_text_element(tag.name) && !tag.self_closing) {
      const std::size_t end = find_end_tag(src, i, tag.name);
      if (tag.name == "title") builder.text(src.substr(i, end - i), true);
      else if (tag.name == "textarea") {
        builder.open(tag.name);
        builder.text(src.substr(i, end - i), false);
        builder.close(tag.name);
      }
      i = end;
      if (i < src.size()) {
        const std::size_t gt = src.find('>', i);
        i = gt == std::string_view::npos ? src.size() : gt + 1;
      }
      text_start = i;
      continue;
    }
    if (!tag.self_closing && !is_void_element(tag.name)) builder.open(tag.name);
  }
  flush(src.size());

  TokenStream stream = builder.take();
  if (stream.empty()) throw EmptyDocument("no tokens after filtering");
  return stream;
}

}  // namespace fuzzyrep
