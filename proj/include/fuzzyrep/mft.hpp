#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fuzzyrep/weighting.hpp"

namespace fuzzyrep {

/// Terms selected by Most Frequent Terms reduction, in selection order.
struct FeatureSet {
  std::vector<std::string> terms;
  std::size_t target = 0;
  bool exhausted = false;  // vocabulary ran out before `target`

  bool contains(std::string_view term) const;
};

/// Per-document ranking: weight descending, ties by term ascending.
std::vector<std::string> rank_terms(const DocVector& vector);

/// Most Frequent Terms selection.
///
/// Walks rank positions 1, 2, ...; at each position the not-yet-selected
/// terms holding that rank in some document are appended ordered by
/// (documents at that rank desc, max weight at that rank desc, term asc).
/// Stops once `k` terms are collected and truncates to exactly `k`.
FeatureSet mft_select(std::span<const DocVector> vectors, std::size_t k);

/// Restricts `vector` to `features`; the result may be empty.
DocVector project(const DocVector& vector, const FeatureSet& features);

struct Projection {
  std::vector<DocVector> vectors;
  std::size_t empty_documents = 0;
};

Projection project_all(std::span<const DocVector> vectors, const FeatureSet& features);

/// One term per line, in selection order.
void write_features(std::ostream& out, const FeatureSet& features);

}  // namespace fuzzyrep
