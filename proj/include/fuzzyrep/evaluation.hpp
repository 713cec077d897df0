#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fuzzyrep/clustering.hpp"
#include "fuzzyrep/corpus.hpp"

namespace fuzzyrep {

struct CategoryScore {
  std::string category;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  int best_cluster = -1;
};

struct F1Report {
  std::vector<CategoryScore> categories;  // first-appearance order of labels
  double overall = 0.0;
};

/// Best-matching-cluster F1 per category, averaged with weights support / N.
/// `labels` is parallel to `clustering.assignment`. Clusters may be the best
/// match for several categories.
F1Report weighted_f1(const Clustering& clustering, std::span<const std::string> labels);

/// `n` sub-manifests, each drawing ceil(fraction * |c|) documents of every
/// category c without replacement; document order follows the source.
/// Throws CategoryTooSmall when some category has fewer than 2 documents.
std::vector<CorpusManifest> stratified_subsample(const CorpusManifest& manifest, double fraction,
                                                 std::size_t n, std::uint64_t seed);

}  // namespace fuzzyrep
