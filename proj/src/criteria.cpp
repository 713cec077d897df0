#include "fuzzyrep/criteria.hpp"

#include <algorithm>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

DocCriteria extract_criteria(const TokenStream& stream) {
  if (stream.empty()) throw EmptyDocument("empty token stream");

  struct Counts {
    int total = 0;
    int title = 0;
    int emphasis = 0;
    std::vector<double> positions;
  };
  std::map<std::string, Counts, std::less<>> counts;

  const double last_index = static_cast<double>(stream.size() - 1);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const Token& token = stream[i];
    Counts& c = counts[token.term];
    ++c.total;
    if (token.in_title) ++c.title;
    if (token.in_emphasis) ++c.emphasis;
    c.positions.push_back(stream.size() == 1 ? 0.0 : static_cast<double>(i) / last_index);
  }

  int max_total = 0;
  int max_title = 0;
  int max_emphasis = 0;
  for (const auto& [term, c] : counts) {
    max_total = std::max(max_total, c.total);
    max_title = std::max(max_title, c.title);
    max_emphasis = std::max(max_emphasis, c.emphasis);
  }

  DocCriteria out;
  for (auto& [term, c] : counts) {
    TermCriteria tc;
    tc.raw_tf = c.total;
    tc.freq_norm = static_cast<double>(c.total) / max_total;
    tc.title_norm = max_title > 0 ? static_cast<double>(c.title) / max_title : 0.0;
    tc.emph_norm = max_emphasis > 0 ? static_cast<double>(c.emphasis) / max_emphasis : 0.0;
    tc.positions = std::move(c.positions);
    out.emplace(term, std::move(tc));
  }
  return out;
}

}  // namespace fuzzyrep
