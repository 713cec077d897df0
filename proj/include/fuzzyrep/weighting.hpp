#pragma once

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyrep/criteria.hpp"
#include "fuzzyrep/knowledge_base.hpp"

namespace fuzzyrep {

struct TermWeight {
  std::string term;
  double weight = 0.0;

  bool operator==(const TermWeight&) const = default;
};

/// Sparse term -> weight vector of one document. Entries are sorted by term,
/// finite, strictly positive.
class DocVector {
 public:
  DocVector() = default;

  /// Zero entries are dropped; throws Error on negative or non-finite weights
  /// and on duplicate terms.
  DocVector(std::string doc_id, std::vector<TermWeight> entries);

  const std::string& doc_id() const noexcept { return doc_id_; }
  const std::vector<TermWeight>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double norm() const noexcept { return norm_; }

  /// Weight of `term`, 0 when absent.
  double weight(std::string_view term) const;

  bool operator==(const DocVector& other) const {
    return doc_id_ == other.doc_id_ && entries_ == other.entries_;
  }

 private:
  std::string doc_id_;
  std::vector<TermWeight> entries_;
  double norm_ = 0.0;
};

struct CorpusStats {
  std::size_t n_docs = 0;
  std::map<std::string, std::size_t, std::less<>> doc_freq;

  /// ln(n_docs / doc_freq). Throws UnknownTerm for unseen terms.
  double idf(std::string_view term) const;
};

CorpusStats corpus_stats(std::span<const DocCriteria> corpus);

/// Importance of every term under a compiled knowledge base.
DocVector weigh_fuzzy(std::string doc_id, const DocCriteria& criteria,
                      const ImportanceSystem& system);

/// raw_tf * ln(|D| / df); terms whose idf is zero are dropped.
DocVector tf_idf(std::string doc_id, const DocCriteria& criteria, const CorpusStats& stats);

/// Fuzzy importance times idf.
DocVector efcc_idf(std::string doc_id, const DocCriteria& criteria, const ImportanceSystem& system,
                   const CorpusStats& stats);

/// `doc_id term:weight ...` with 6 significant digits.
void write_vector(std::ostream& out, const DocVector& vector);

}  // namespace fuzzyrep
