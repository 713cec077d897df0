#pragma once

#include <set>
#include <string>
#include <string_view>

#include "fuzzyrep/tokenizer.hpp"

namespace fuzzyrep {

using TagSet = std::set<std::string, std::less<>>;

/// em, b, u, strong, big, h1-h6, cite, dfn, i, blockquote.
const TagSet& default_emphasis_tags();

/// Returns `raw` as UTF-8. Valid UTF-8 passes through (minus a BOM); anything
/// else is reinterpreted as Latin-1. Throws UndecodableInput on NUL bytes.
std::string decode_text(std::string_view raw);

/// Replaces character references (&amp;, &#38;, &#x26;, ...) in `text`.
std::string decode_entities(std::string_view text);

/// Tag-soup tolerant HTML scan producing tokens in document order.
///
/// A token is in_title inside <title>, in_emphasis when any enclosing element
/// is in `emphasis_tags`, and in_link inside <a>. Script, style and comment
/// content is skipped. Stray end tags are ignored and unclosed elements end
/// with their parent. Throws EmptyDocument when no token survives.
TokenStream parse_html(std::string_view raw_bytes,
                       const TagSet& emphasis_tags = default_emphasis_tags(),
                       const Tokenizer& tokenizer = Tokenizer());

}  // namespace fuzzyrep
