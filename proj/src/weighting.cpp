#include "fuzzyrep/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

DocVector::DocVector(std::string doc_id, std::vector<TermWeight> entries)
    : doc_id_(std::move(doc_id)) {
  std::erase_if(entries, [](const TermWeight& e) { return e.weight == 0.0; });
  std::sort(entries.begin(), entries.end(),
            [](const TermWeight& x, const TermWeight& y) { return x.term < y.term; });
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double w = entries[i].weight;
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(doc_id_ + ": invalid weight for " + entries[i].term);
    }
    if (i > 0 && entries[i].term == entries[i - 1].term) {
      throw Error(doc_id_ + ": duplicate term " + entries[i].term);
    }
    sum_sq += w * w;
  }
  entries_ = std::move(entries);
  norm_ = std::sqrt(sum_sq);
}

double DocVector::weight(std::string_view term) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                                   [](const TermWeight& e, std::string_view t) { return e.term < t; });
  return it != entries_.end() && it->term == term ? it->weight : 0.0;
}

double CorpusStats::idf(std::string_view term) const {
  const auto it = doc_freq.find(term);
  if (it == doc_freq.end()) throw UnknownTerm("term not in corpus statistics: " + std::string(term));
  return std::log(static_cast<double>(n_docs) / static_cast<double>(it->second));
}

CorpusStats corpus_stats(std::span<const DocCriteria> corpus) {
  CorpusStats stats;
  stats.n_docs = corpus.size();
  for (const DocCriteria& doc : corpus) {
    for (const auto& [term, tc] : doc) ++stats.doc_freq[term];
  }
  return stats;
}

DocVector weigh_fuzzy(std::string doc_id, const DocCriteria& criteria,
                      const ImportanceSystem& system) {
  std::vector<TermWeight> entries;
  entries.reserve(criteria.size());
  for (const auto& [term, tc] : criteria) entries.push_back({term, system.importance(tc)});
  return DocVector(std::move(doc_id), std::move(entries));
}

DocVector tf_idf(std::string doc_id, const DocCriteria& criteria, const CorpusStats& stats) {
  std::vector<TermWeight> entries;
  entries.reserve(criteria.size());
  for (const auto& [term, tc] : criteria) {
    entries.push_back({term, static_cast<double>(tc.raw_tf) * stats.idf(term)});
  }
  return DocVector(std::move(doc_id), std::move(entries));
}

DocVector efcc_idf(std::string doc_id, const DocCriteria& criteria, const ImportanceSystem& system,
                   const CorpusStats& stats) {
  std::vector<TermWeight> entries;
  entries.reserve(criteria.size());
  for (const auto& [term, tc] : criteria) {
    entries.push_back({term, system.importance(tc) * stats.idf(term)});
  }
  return DocVector(std::move(doc_id), std::move(entries));
}

void write_vector(std::ostream& out, const DocVector& vector) {
  out << vector.doc_id();
  char buf[32];
  for (const auto& e : vector.entries()) {
    std::snprintf(buf, sizeof buf, "%.6g", e.weight);
    out << ' ' << e.term << ':' << buf;
  }
  out << '\n';
}

}  // namespace fuzzyrep
