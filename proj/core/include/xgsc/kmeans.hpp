#pragma once

#include "xgsc/docembed.hpp"
#include "xgsc/partition.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xgsc {

struct KMeansOptions {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t max_iter = 300;
  /// Stop once the relative objective improvement drops below tol.
  double tol = 1e-9;
  /// Independent restarts with seeds seed, seed+1, ...; the lowest objective
  /// wins, ties going to the lowest seed.
  std::size_t restarts = 10;
};

enum class KMeansVariant { standard, weighted, spherical };

std::string_view to_string(KMeansVariant variant);

struct ClusteringResult {
  Partition partition;
  Matrix centers;
  double objective = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::string embedding_tag;
  KMeansVariant variant = KMeansVariant::standard;
  /// Objective after every center update; nonincreasing.
  std::vector<double> objective_trace;
};

/// One Lloyd run from a k-means++ start. With `weights`, minimizes
/// sum_i w_i ||x_i - mu_j||^2 with weighted-mean centers. Ties in
/// assignment go to the lowest cluster index; an empty cluster is reseeded
/// with the point farthest from its center.
ClusteringResult lloyd_run(const Matrix& X, const Vector* weights, std::size_t k,
                           std::uint64_t seed, std::size_t max_iter, double tol);

/// Spherical variant: assignment by largest cosine, unit-normalized mean
/// centers, objective sum_i (1 - x_i^T mu_j). Rows must be unit length.
ClusteringResult spherical_run(const Matrix& X, std::size_t k, std::uint64_t seed,
                               std::size_t max_iter, double tol);

ClusteringResult kmeans(const EmbeddingMatrix& emb, const KMeansOptions& options);
/// Requires emb.row_weights.
ClusteringResult weighted_kmeans(const EmbeddingMatrix& emb, const KMeansOptions& options);
ClusteringResult spherical_kmeans(const EmbeddingMatrix& emb, const KMeansOptions& options);

/// Weighted (or plain) cluster means.
Matrix cluster_centers(const Matrix& X, const Partition& partition,
                       const Vector* weights = nullptr);

/// sum_j sum_{i in C_j} w_i ||x_i - mu_w(C_j)||^2 evaluated from scratch.
double kmeans_objective(const Matrix& X, const Partition& partition,
                        const Vector* weights = nullptr);

/// sum_j 1/(2 W_j) sum_{i,l in C_j} w_i w_l ||x_i - x_l||^2, W_j = sum w_i.
double pairwise_kmeans_objective(const Matrix& X, const Partition& partition,
                                 const Vector* weights = nullptr);

double spherical_objective(const Matrix& X, const Partition& partition);

}  // namespace xgsc
