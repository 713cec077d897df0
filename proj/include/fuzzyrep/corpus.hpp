#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyrep/criteria.hpp"
#include "fuzzyrep/html.hpp"
#include "fuzzyrep/tokenizer.hpp"

namespace fuzzyrep {

struct ManifestEntry {
  std::string doc_id;
  std::filesystem::path path;  // absolute, or relative to the working directory
  std::string category;

  bool operator==(const ManifestEntry&) const = default;
};

struct CorpusManifest {
  std::vector<ManifestEntry> documents;
  std::optional<std::filesystem::path> anchors_dir;

  /// Distinct categories in first-appearance order.
  std::vector<std::string> categories() const;

  bool operator==(const CorpusManifest&) const = default;
};

/// Reads `doc_id<TAB>relative_path<TAB>category` lines; `#` lines and blank
/// lines are skipped. Paths resolve against the manifest's directory.
/// Throws ManifestError on malformed lines, duplicate ids, empty categories
/// or missing files.
CorpusManifest load_manifest(const std::filesystem::path& file);

/// Checks the manifest invariants on an in-memory manifest.
void validate_manifest(const CorpusManifest& manifest);

/// Writes a manifest with paths relative to the manifest file's directory.
void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& file);

enum class AnchorVariant { A1, A2, A3, B1, B2, B3 };

std::optional<AnchorVariant> parse_anchor_variant(std::string_view name);
std::string to_string(AnchorVariant variant);

/// click, link, here, homepage, home, page, website, site.
const std::set<std::string, std::less<>>& default_anchor_stopwords();

/// Maximum anchor lines honoured per document.
inline constexpr std::size_t kMaxAnchorTexts = 300;

/// Reads `<dir>/<doc_id>.txt`; std::nullopt when the file does not exist.
std::optional<std::vector<std::string>> load_anchor_texts(const std::filesystem::path& dir,
                                                          std::string_view doc_id);

/// Appends anchor-text tokens to a document stream.
///
/// A variants append to the body, B variants append as title tokens. Setting 2
/// first removes the tokens inside the document's own links; setting 3 drops
/// anchor tokens found in `anchor_stopwords`.
TokenStream apply_anchor_variant(
    const TokenStream& doc_stream, const std::vector<std::string>& anchor_texts,
    AnchorVariant variant, const Tokenizer& tokenizer = Tokenizer(),
    const std::set<std::string, std::less<>>& anchor_stopwords = default_anchor_stopwords());

struct IngestOptions {
  TagSet emphasis_tags = default_emphasis_tags();
  TokenizerOptions tokenizer;
  std::optional<AnchorVariant> anchor_variant;
  std::set<std::string, std::less<>> anchor_stopwords = default_anchor_stopwords();
};

struct IngestedDocument {
  std::string doc_id;
  std::string category;
  DocCriteria criteria;
};

/// Parses one document file (plus anchors when configured) into criteria.
IngestedDocument ingest_document(const ManifestEntry& entry,
                                 const std::optional<std::filesystem::path>& anchors_dir,
                                 const IngestOptions& options);

/// Ingests every manifest document in manifest order.
std::vector<IngestedDocument> ingest_corpus(const CorpusManifest& manifest,
                                            const IngestOptions& options);

}  // namespace fuzzyrep
