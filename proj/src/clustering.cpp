#include "fuzzyrep/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

namespace {

using Dense = Eigen::MatrixXd;
using RowVec = Eigen::RowVectorXd;

constexpr double kMinGain = 1e-12;

RowVec row_sum(const SparseRows<double>& x, const std::vector<int>& members) {
  RowVec sum = RowVec::Zero(x.cols());
  for (int i : members) {
    for (SparseRows<double>::InnerIterator it(x, i); it; ++it) sum(it.col()) += it.value();
  }
  return sum;
}

double dot(const SparseRows<double>& x, int i, const RowVec& v) {
  double s = 0.0;
  for (SparseRows<double>::InnerIterator it(x, i); it; ++it) s += it.value() * v(it.col());
  return s;
}

void add_row(const SparseRows<double>& x, int i, RowVec& v, double sign) {
  for (SparseRows<double>::InnerIterator it(x, i); it; ++it) v(it.col()) += sign * it.value();
}

struct Split {
  std::vector<int> left;
  std::vector<int> right;
  double value = -std::numeric_limits<double>::infinity();
};

// ||D - x|| and ||D + x|| for unit x, from ||D||^2 and D.x.
double norm_without(double sq, double d) { return std::sqrt(std::max(0.0, sq - 2.0 * d + 1.0)); }
double norm_with(double sq, double d) { return std::sqrt(std::max(0.0, sq + 2.0 * d + 1.0)); }

// Single-document moves between two sides until no move improves the sum of
// composite norms.
void refine_pair(const SparseRows<double>& x, std::vector<int>& side, const std::vector<int>& members,
                 RowVec (&comp)[2], int max_passes) {
  int sizes[2] = {0, 0};
  for (int s : side) ++sizes[s];
  double sq[2] = {comp[0].squaredNorm(), comp[1].squaredNorm()};
  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (std::size_t m = 0; m < members.size(); ++m) {
      const int i = members[m];
      const int a = side[m];
      const int b = 1 - a;
      if (sizes[a] <= 1) continue;
      const double da = dot(x, i, comp[a]);
      const double db = dot(x, i, comp[b]);
      const double gain = norm_without(sq[a], da) + norm_with(sq[b], db) - std::sqrt(sq[a]) -
                          std::sqrt(sq[b]);
      if (gain > kMinGain) {
        add_row(x, i, comp[a], -1.0);
        add_row(x, i, comp[b], 1.0);
        sq[a] = comp[a].squaredNorm();
        sq[b] = comp[b].squaredNorm();
        --sizes[a];
        ++sizes[b];
        side[m] = b;
        moved = true;
      }
    }
    if (!moved) break;
  }
}

Split bisect(const SparseRows<double>& x, const std::vector<int>& members, std::mt19937_64& rng,
             const BisectionOptions& options) {
  const std::size_t m = members.size();
  Split best;
  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    const std::size_t s0 = rng() % m;
    std::size_t s1 = rng() % (m - 1);
    if (s1 >= s0) ++s1;

    RowVec centroid[2];
    centroid[0] = row_sum(x, {members[s0]});
    centroid[1] = row_sum(x, {members[s1]});
    std::vector<int> side(m, -1);
    RowVec comp[2];
    for (int iter = 0; iter < std::max(1, options.max_iterations); ++iter) {
      bool changed = false;
      int counts[2] = {0, 0};
      for (std::size_t j = 0; j < m; ++j) {
        const int i = members[j];
        const int s = dot(x, i, centroid[1]) > dot(x, i, centroid[0]) ? 1 : 0;
        if (side[j] != s) changed = true;
        side[j] = s;
        ++counts[s];
      }
      if (counts[0] == 0) {
        side[s0] = 0;
        changed = true;
      }
      if (counts[1] == 0) {
        side[s1] = 1;
        changed = true;
      }
      comp[0] = RowVec::Zero(x.cols());
      comp[1] = RowVec::Zero(x.cols());
      for (std::size_t j = 0; j < m; ++j) add_row(x, members[j], comp[side[j]], 1.0);
      if (!changed && iter > 0) break;
      for (int s = 0; s < 2; ++s) {
        const double n = comp[s].norm();
        centroid[s] = n > 0.0 ? RowVec(comp[s] / n) : comp[s];
      }
    }
    refine_pair(x, side, members, comp, options.max_iterations);

    const double value = comp[0].norm() + comp[1].norm();
    if (value > best.value) {
      best.value = value;
      best.left.clear();
      best.right.clear();
      for (std::size_t j = 0; j < m; ++j) (side[j] == 0 ? best.left : best.right).push_back(members[j]);
    }
  }
  return best;
}

// One or more passes of single-document moves across all clusters.
void refine_global(const SparseRows<double>& x, std::vector<int>& assignment,
                   const std::vector<int>& active, int clusters, int passes) {
  if (clusters < 2) return;
  Dense comp = composite_vectors(x, assignment, clusters);
  Eigen::VectorXd sq = comp.rowwise().squaredNorm();
  std::vector<int> sizes(static_cast<std::size_t>(clusters), 0);
  for (int i : active) ++sizes[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])];

  for (int pass = 0; pass < passes; ++pass) {
    bool moved = false;
    for (int i : active) {
      const int a = assignment[static_cast<std::size_t>(i)];
      if (sizes[static_cast<std::size_t>(a)] <= 1) continue;
      const Eigen::VectorXd d = comp * x.row(i).transpose();
      const double base_a = std::sqrt(sq(a));
      const double without = norm_without(sq(a), d(a));
      int best = a;
      double best_gain = kMinGain;
      for (int b = 0; b < clusters; ++b) {
        if (b == a) continue;
        const double gain = without + norm_with(sq(b), d(b)) - base_a - std::sqrt(sq(b));
        if (gain > best_gain) {
          best_gain = gain;
          best = b;
        }
      }
      if (best == a) continue;
      comp.row(a) -= x.row(i);
      comp.row(best) += x.row(i);
      sq(a) = comp.row(a).squaredNorm();
      sq(best) = comp.row(best).squaredNorm();
      --sizes[static_cast<std::size_t>(a)];
      ++sizes[static_cast<std::size_t>(best)];
      assignment[static_cast<std::size_t>(i)] = best;
      moved = true;
    }
    if (!moved) break;
  }
}

}  // namespace

DocumentMatrix build_document_matrix(std::span<const DocVector> vectors) {
  DocumentMatrix out;
  std::map<std::string_view, int> index;
  for (const DocVector& v : vectors) {
    for (const auto& e : v.entries()) index.emplace(e.term, 0);
  }
  out.terms.reserve(index.size());
  int col = 0;
  for (auto& [term, c] : index) {
    c = col++;
    out.terms.emplace_back(term);
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    const DocVector& v = vectors[r];
    if (v.norm() == 0.0) continue;
    for (const auto& e : v.entries()) {
      triplets.emplace_back(static_cast<int>(r), index.at(e.term), e.weight / v.norm());
    }
  }
  out.rows.resize(static_cast<Eigen::Index>(vectors.size()), col);
  out.rows.setFromTriplets(triplets.begin(), triplets.end());
  out.rows.makeCompressed();
  return out;
}

std::vector<std::size_t> Clustering::sizes() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(std::max(k, 0)), 0);
  for (int c : assignment) ++out[static_cast<std::size_t>(c)];
  return out;
}

std::size_t Clustering::empty_clusters() const {
  const auto s = sizes();
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), std::size_t{0}));
}

Clustering repeated_bisections(std::span<const DocVector> vectors, int k, std::uint64_t seed,
                               const BisectionOptions& options) {
  if (k < 1) throw Error("number of clusters must be at least 1");

  Clustering result;
  result.k = k;
  result.doc_ids.reserve(vectors.size());
  for (const DocVector& v : vectors) result.doc_ids.push_back(v.doc_id());

  std::vector<int> active;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!vectors[i].empty()) active.push_back(static_cast<int>(i));
  }
  result.leftover_docs = vectors.size() - active.size();

  int clusters = k;
  if (result.leftover_docs > 0 && k >= 2) {
    clusters = k - 1;
    result.leftover_cluster = k - 1;
  }
  if (active.size() < static_cast<std::size_t>(clusters)) {
    throw InsufficientDocs("need at least " + std::to_string(clusters) +
                           " non-empty documents to form clusters, got " +
                           std::to_string(active.size()));
  }

  result.assignment.assign(vectors.size(), result.leftover_cluster >= 0 ? result.leftover_cluster : 0);

  const DocumentMatrix matrix = build_document_matrix(vectors);
  const SparseRows<double>& x = matrix.rows;

  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> parts{active};
  while (static_cast<int>(parts.size()) < clusters) {
    int pick = -1;
    double pick_score = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const auto n = static_cast<double>(parts[p].size());
      if (parts[p].size() < 2) continue;
      const double cohesion = row_sum(x, parts[p]).squaredNorm() / (n * n);
      const double score = n * (1.0 - cohesion);
      if (score > pick_score) {
        pick_score = score;
        pick = static_cast<int>(p);
      }
    }
    if (pick < 0) throw InsufficientDocs("no cluster left to split");
    Split split = bisect(x, parts[static_cast<std::size_t>(pick)], rng, options);
    parts[static_cast<std::size_t>(pick)] = std::move(split.left);
    parts.push_back(std::move(split.right));
  }

  std::vector<int> working(vectors.size(), -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (int i : parts[p]) working[static_cast<std::size_t>(i)] = static_cast<int>(p);
  }
  refine_global(x, working, active, clusters, options.refine_passes);
  result.criterion = i2_criterion<double>(x, working, clusters);
  for (int i : active) {
    result.assignment[static_cast<std::size_t>(i)] = working[static_cast<std::size_t>(i)];
  }
  return result;
}

}  // namespace fuzzyrep
