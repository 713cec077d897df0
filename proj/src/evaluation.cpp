#include "fuzzyrep/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

F1Report weighted_f1(const Clustering& clustering, std::span<const std::string> labels) {
  if (labels.size() != clustering.assignment.size()) {
    throw LengthMismatch("labels cover " + std::to_string(labels.size()) + " documents, clustering " +
                         std::to_string(clustering.assignment.size()));
  }
  std::vector<std::string> order;
  std::map<std::string, std::size_t, std::less<>> index;
  for (const auto& label : labels) {
    if (index.emplace(label, order.size()).second) order.push_back(label);
  }
  const auto k = static_cast<std::size_t>(std::max(clustering.k, 0));
  std::vector<std::vector<std::size_t>> overlap(order.size(), std::vector<std::size_t>(k, 0));
  std::vector<std::size_t> cluster_size(k, 0);
  std::vector<std::size_t> support(order.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = index.at(labels[i]);
    const auto j = static_cast<std::size_t>(clustering.assignment[i]);
    ++overlap[c][j];
    ++cluster_size[j];
    ++support[c];
  }

  F1Report report;
  const auto total = static_cast<double>(labels.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    CategoryScore score;
    score.category = order[c];
    score.support = support[c];
    for (std::size_t j = 0; j < k; ++j) {
      const double hit = static_cast<double>(overlap[c][j]);
      const double p = cluster_size[j] > 0 ? hit / static_cast<double>(cluster_size[j]) : 0.0;
      const double r = hit / static_cast<double>(support[c]);
      const double f = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
      if (score.best_cluster < 0 || f > score.f1) {
        score.precision = p;
        score.recall = r;
        score.f1 = f;
        score.best_cluster = static_cast<int>(j);
      }
    }
    report.overall += static_cast<double>(support[c]) / total * score.f1;
    report.categories.push_back(std::move(score));
  }
  return report;
}

std::vector<CorpusManifest> stratified_subsample(const CorpusManifest& manifest, double fraction,
                                                 std::size_t n, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error("subsample fraction must lie in (0, 1]");
  std::map<std::string, std::vector<std::size_t>, std::less<>> members;
  std::vector<std::string> order = manifest.categories();
  for (std::size_t i = 0; i < manifest.documents.size(); ++i) {
    members[manifest.documents[i].category].push_back(i);
  }
  for (const auto& c : order) {
    if (members[c].size() < 2) {
      throw CategoryTooSmall("category " + c + " has " + std::to_string(members[c].size()) +
                             " document(s); at least 2 are needed");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<CorpusManifest> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<char> keep(manifest.documents.size(), 0);
    for (const auto& c : order) {
      std::vector<std::size_t> pool = members[c];
      const auto take = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(pool.size()) - 1e-9));
      // partial Fisher-Yates
      for (std::size_t t = 0; t < take; ++t) {
        const std::size_t pick = t + static_cast<std::size_t>(rng() % (pool.size() - t));
        std::swap(pool[t], pool[pick]);
        keep[pool[t]] = 1;
      }
    }
    CorpusManifest sub;
    sub.anchors_dir = manifest.anchors_dir;
    for (std::size_t i = 0; i < manifest.documents.size(); ++i) {
      if (keep[i]) sub.documents.push_back(manifest.documents[i]);
    }
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace fuzzyrep
