#pragma once

#include <map>
#include <string>
#include <vector>

#include "fuzzyrep/tokenizer.hpp"

namespace fuzzyrep {

/// Normalized criterion inputs for one term in one document.
struct TermCriteria {
  double freq_norm = 0.0;
  double title_norm = 0.0;
  double emph_norm = 0.0;
  std::vector<double> positions;  // occurrence index / (token count - 1)
  int raw_tf = 0;

  bool operator==(const TermCriteria&) const = default;
};

/// Ordered by term so iteration is reproducible.
using DocCriteria = std::map<std::string, TermCriteria, std::less<>>;

/// Counts occurrences and normalizes each criterion to the document maximum.
/// Throws EmptyDocument for an empty stream.
DocCriteria extract_criteria(const TokenStream& stream);

}  // namespace fuzzyrep
