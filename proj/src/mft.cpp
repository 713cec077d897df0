#include "fuzzyrep/mft.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

bool FeatureSet::contains(std::string_view term) const {
  return std::find(terms.begin(), terms.end(), term) != terms.end();
}

std::vector<std::string> rank_terms(const DocVector& vector) {
  std::vector<const TermWeight*> order;
  order.reserve(vector.size());
  for (const auto& e : vector.entries()) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const TermWeight* x, const TermWeight* y) {
    if (x->weight != y->weight) return x->weight > y->weight;
    return x->term < y->term;
  });
  std::vector<std::string> ranked;
  ranked.reserve(order.size());
  for (const TermWeight* e : order) ranked.push_back(e->term);
  return ranked;
}

FeatureSet mft_select(std::span<const DocVector> vectors, std::size_t k) {
  if (k == 0) throw Error("mft_select: k must be at least 1");

  struct Ranked {
    std::vector<std::string> terms;
    const DocVector* vector;
  };
  std::vector<Ranked> ranked;
  std::size_t depth = 0;
  for (const DocVector& v : vectors) {
    ranked.push_back({rank_terms(v), &v});
    depth = std::max(depth, v.size());
  }

  struct Tally {
    std::size_t count = 0;
    double max_weight = 0.0;
  };

  FeatureSet result;
  result.target = k;
  std::unordered_set<std::string> selected;
  for (std::size_t r = 0; r < depth && result.terms.size() < k; ++r) {
    std::map<std::string, Tally, std::less<>> tallies;
    for (const Ranked& doc : ranked) {
      if (r >= doc.terms.size()) continue;
      const std::string& term = doc.terms[r];
      if (selected.contains(term)) continue;
      Tally& t = tallies[term];
      ++t.count;
      t.max_weight = std::max(t.max_weight, doc.vector->weight(term));
    }
    std::vector<std::pair<std::string, Tally>> round(tallies.begin(), tallies.end());
    std::stable_sort(round.begin(), round.end(), [](const auto& x, const auto& y) {
      if (x.second.count != y.second.count) return x.second.count > y.second.count;
      return x.second.max_weight > y.second.max_weight;
    });
    for (auto& [term, tally] : round) {
      selected.insert(term);
      result.terms.push_back(std::move(term));
    }
  }
  if (result.terms.size() > k) result.terms.resize(k);
  result.exhausted = result.terms.size() < k;
  return result;
}

DocVector project(const DocVector& vector, const FeatureSet& features) {
  const std::unordered_set<std::string_view> keep(features.terms.begin(), features.terms.end());
  std::vector<TermWeight> entries;
  for (const auto& e : vector.entries()) {
    if (keep.contains(e.term)) entries.push_back(e);
  }
  return DocVector(vector.doc_id(), std::move(entries));
}

Projection project_all(std::span<const DocVector> vectors, const FeatureSet& features) {
  Projection out;
  out.vectors.reserve(vectors.size());
  for (const DocVector& v : vectors) {
    out.vectors.push_back(project(v, features));
    if (out.vectors.back().empty()) ++out.empty_documents;
  }
  return out;
}

void write_features(std::ostream& out, const FeatureSet& features) {
  for (const auto& term : features.terms) out << term << '\n';
}

}  // namespace fuzzyrep
