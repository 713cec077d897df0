#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "fuzzyrep/weighting.hpp"

namespace fuzzyrep {

template <typename Scalar>
using SparseRows = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

/// Documents as unit-length rows over a shared term index; zero vectors stay
/// zero rows.
struct DocumentMatrix {
  SparseRows<double> rows;
  std::vector<std::string> terms;  // column -> term
};

DocumentMatrix build_document_matrix(std::span<const DocVector> vectors);

/// Composite vectors (per-cluster sums of rows), one row per cluster.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> composite_vectors(
    const SparseRows<Scalar>& rows, std::span<const int> assignment, int clusters) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> composites =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(clusters, rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const int c = assignment[static_cast<std::size_t>(i)];
    if (c < 0) continue;
    for (typename SparseRows<Scalar>::InnerIterator it(rows, i); it; ++it) {
      composites(c, it.col()) += it.value();
    }
  }
  return composites;
}

/// Sum over clusters of the composite vector norms; rows assigned -1 are
/// ignored. For unit rows this is the sum over clusters of
/// sqrt(sum of pairwise cosines).
template <typename Scalar>
Scalar i2_criterion(const SparseRows<Scalar>& rows, std::span<const int> assignment, int clusters) {
  return composite_vectors(rows, assignment, clusters).rowwise().norm().sum();
}

struct BisectionOptions {
  int restarts = 10;        // random 2-means restarts per bisection
  int max_iterations = 50;  // 2-means assignment rounds per restart
  int refine_passes = 1;    // global single-document move passes at the end
};

struct Clustering {
  std::vector<std::string> doc_ids;
  std::vector<int> assignment;  // parallel to doc_ids, ids in [0, k)
  int k = 0;
  int leftover_cluster = -1;  // holds zero vectors, -1 when there are none
  std::size_t leftover_docs = 0;
  double criterion = 0.0;  // I2 over the non-zero documents

  std::vector<std::size_t> sizes() const;
  std::size_t empty_clusters() const;
};

/// Repeated bisections with a final global refinement.
///
/// Starts from one cluster and splits, k-1 times, the cluster maximizing
/// size * (1 - cohesion), where cohesion = |D|^2 / size^2 for composite D.
/// Each split is the best of `restarts` spherical 2-means runs followed by
/// single-document moves, scored by the I2 criterion. Zero vectors go to a
/// dedicated leftover cluster (the last id) and the rest share k-1 clusters.
/// Throws InsufficientDocs when there are fewer non-zero documents than
/// clusters to fill.
Clustering repeated_bisections(std::span<const DocVector> vectors, int k, std::uint64_t seed,
                               const BisectionOptions& options = {});

}  // namespace fuzzyrep
