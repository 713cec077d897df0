#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fuzzyrep/corpus.hpp"

namespace fuzzyrep {

enum class TermDraw { Uniform, Zipf };

struct SyntheticOptions {
  std::size_t categories = 4;
  std::size_t docs_per_category = 100;
  std::size_t topic_terms = 80;    // per category
  std::size_t common_terms = 300;  // shared by all categories
  std::size_t body_length = 150;   // body tokens per document
  double topic_share = 0.6;        // chance a body token is topical
  TermDraw draw = TermDraw::Zipf;
  double zipf_exponent = 1.1;
  std::size_t title_terms = 3;  // topical title words
  double emphasis_rate = 0.03;  // chance a body token is wrapped in <b>
  // Off-topic embellishment vocabulary shared by every category. When
  // non-empty, each title carries `rhetoric_per_title` of these words and the
  // body opens with them as a heading.
  std::size_t rhetoric_terms = 0;
  std::size_t rhetoric_per_title = 3;
  bool anchors = false;
  std::uint64_t seed = 1;
};

/// Deterministic pseudo-word for `index` within a vocabulary `prefix`.
std::string synthetic_word(const std::string& prefix, std::size_t index);

/// Writes HTML documents, `manifest.tsv` and optionally `anchors/` under
/// `dir` and returns the loaded manifest.
CorpusManifest generate_corpus(const SyntheticOptions& options, const std::filesystem::path& dir);

/// `count` values of per-document maximum-normalized term frequencies drawn
/// under `draw`, for profiling experiments without HTML round trips.
std::vector<double> synthetic_frequency_values(std::size_t count, TermDraw draw,
                                               double zipf_exponent, std::uint64_t seed);

}  // namespace fuzzyrep
