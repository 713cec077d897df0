#include "fuzzyrep/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string_view trim_cr(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  return line;
}

}  // namespace

std::vector<std::string> CorpusManifest::categories() const {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& doc : documents) {
    if (seen.insert(doc.category).second) out.push_back(doc.category);
  }
  return out;
}

void validate_manifest(const CorpusManifest& manifest) {
  std::set<std::string, std::less<>> ids;
  for (const auto& doc : manifest.documents) {
    if (doc.doc_id.empty()) throw ManifestError("empty doc_id");
    if (!ids.insert(doc.doc_id).second) throw ManifestError("duplicate doc_id " + doc.doc_id);
    if (doc.category.empty()) throw ManifestError("empty category for " + doc.doc_id);
    if (!fs::exists(doc.path)) {
      throw ManifestError("missing file for " + doc.doc_id + ": " + doc.path.string());
    }
  }
}

CorpusManifest load_manifest(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ManifestError("cannot open manifest " + file.string());
  const fs::path base = file.parent_path();

  CorpusManifest manifest;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim_cr(raw);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string_view::npos;
         start = tab + 1) {
      fields.push_back(line.substr(start, tab - start));
    }
    fields.push_back(line.substr(start));
    if (fields.size() != 3) {
      throw ManifestError(file.string() + ":" + std::to_string(line_no) +
                          ": expected 3 tab-separated fields");
    }
    fs::path path{std::string(fields[1])};
    if (path.is_relative()) path = base / path;
    manifest.documents.push_back({std::string(fields[0]), path, std::string(fields[2])});
  }
  validate_manifest(manifest);
  return manifest;
}

void write_manifest(const CorpusManifest& manifest, const fs::path& file) {
  std::ofstream out(file);
  if (!out) throw ManifestError("cannot write manifest " + file.string());
  const fs::path base = fs::absolute(file).parent_path();
  for (const auto& doc : manifest.documents) {
    const fs::path rel = fs::absolute(doc.path).lexically_relative(base);
    out << doc.doc_id << '\t' << (rel.empty() ? doc.path : rel).generic_string() << '\t'
        << doc.category << '\n';
  }
}

std::optional<AnchorVariant> parse_anchor_variant(std::string_view name) {
  static constexpr std::pair<std::string_view, AnchorVariant> kNames[] = {
      {"a1", AnchorVariant::A1}, {"a2", AnchorVariant::A2}, {"a3", AnchorVariant::A3},
      {"b1", AnchorVariant::B1}, {"b2", AnchorVariant::B2}, {"b3", AnchorVariant::B3},
  };
  std::string lower(name);
  for (char& c : lower) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  if (lower.size() == 3 && lower[1] == '-') lower.erase(1, 1);  // "a-1"
  for (const auto& [key, value] : kNames) {
    if (key == lower) return value;
  }
  return std::nullopt;
}

std::string to_string(AnchorVariant variant) {
  switch (variant) {
    case AnchorVariant::A1: return "a1";
    case AnchorVariant::A2: return "a2";
    case AnchorVariant::A3: return "a3";
    case AnchorVariant::B1: return "b1";
    case AnchorVariant::B2: return "b2";
    case AnchorVariant::B3: return "b3";
  }
  return "?";
}

const std::set<std::string, std::less<>>& default_anchor_stopwords() {
  static const std::set<std::string, std::less<>> words = {
      "click", "link", "here", "homepage", "home", "page", "website", "site"};
  return words;
}

std::optional<std::vector<std::string>> load_anchor_texts(const fs::path& dir,
                                                          std::string_view doc_id) {
  const fs::path file = dir / (std::string(doc_id) + ".txt");
  if (!fs::exists(file)) return std::nullopt;
  std::ifstream in(file);
  if (!in) throw Error("cannot open anchor file " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (lines.size() < kMaxAnchorTexts && std::getline(in, line)) {
    const std::string_view trimmed = trim_cr(line);
    if (!trimmed.empty()) lines.emplace_back(trimmed);
  }
  return lines;
}

TokenStream apply_anchor_variant(const TokenStream& doc_stream,
                                 const std::vector<std::string>& anchor_texts,
                                 AnchorVariant variant, const Tokenizer& tokenizer,
                                 const std::set<std::string, std::less<>>& anchor_stopwords) {
  const bool as_title =
      variant == AnchorVariant::B1 || variant == AnchorVariant::B2 || variant == AnchorVariant::B3;
  const bool drop_links = variant == AnchorVariant::A2 || variant == AnchorVariant::B2;
  const bool drop_stopwords = variant == AnchorVariant::A3 || variant == AnchorVariant::B3;

  TokenStream out;
  out.reserve(doc_stream.size());
  for (const Token& token : doc_stream) {
    if (drop_links && token.in_link) continue;
    out.push_back(token);
  }

  std::size_t base = 0;
  if (!doc_stream.empty()) {
    base = doc_stream.back().char_offset + doc_stream.back().term.size() + 1;
  }
  for (const std::string& anchor : anchor_texts) {
    for (auto& [term, offset] : tokenizer.tokenize_with_offsets(anchor)) {
      if (drop_stopwords && anchor_stopwords.contains(term)) continue;
      out.push_back({std::move(term), base + offset, as_title, false, false});
    }
    base += anchor.size() + 1;
  }
  return out;
}

IngestedDocument ingest_document(const ManifestEntry& entry,
                                 const std::optional<fs::path>& anchors_dir,
                                 const IngestOptions& options) {
  const Tokenizer tokenizer(options.tokenizer);
  try {
    TokenStream stream = parse_html(read_file(entry.path), options.emphasis_tags, tokenizer);
    if (options.anchor_variant && anchors_dir) {
      if (auto anchors = load_anchor_texts(*anchors_dir, entry.doc_id)) {
        stream = apply_anchor_variant(stream, *anchors, *options.anchor_variant, tokenizer,
                                      options.anchor_stopwords);
      }
    }
    return {entry.doc_id, entry.category, extract_criteria(stream)};
  } catch (const EmptyDocument& e) {
    throw EmptyDocument(entry.doc_id + ": " + e.what());
  } catch (const UndecodableInput& e) {
    throw UndecodableInput(entry.doc_id + ": " + e.what());
  }
}

std::vector<IngestedDocument> ingest_corpus(const CorpusManifest& manifest,
                                            const IngestOptions& options) {
  std::vector<IngestedDocument> docs;
  docs.reserve(manifest.documents.size());
  for (const auto& entry : manifest.documents) {
    docs.push_back(ingest_document(entry, manifest.anchors_dir, options));
  }
  return docs;
}

}  // namespace fuzzyrep
