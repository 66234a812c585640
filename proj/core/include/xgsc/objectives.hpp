#pragma once

#include "xgsc/partition.hpp"
#include "xgsc/simgraph.hpp"

#include <optional>

namespace xgsc {

/// cut(C_j, complement) = sum_{i in C_j} sum_{l not in C_j} s_il.
double cut_value(const SimilarityGraph& graph, const Partition& partition, int j);

/// sum_{i != l in C_j} s_il.
double within_similarity(const SimilarityGraph& graph, const Partition& partition, int j);

double rcut(const SimilarityGraph& graph, const Partition& partition);
/// Throws if some cluster has zero volume.
double ncut(const SimilarityGraph& graph, const Partition& partition);
double nrcut(const SimilarityGraph& graph, const Partition& partition);

/// k-means target on unit document vectors, via ||g_i - g_l||^2 = 2 - 2 s_il.
double q_glove(const SimilarityGraph& graph, const Partition& partition);
/// (n - k)/2 - sum_j 1/(2|C_j|) sum_{i != l in C_j} s_il.
double q_kbased(const SimilarityGraph& graph, const Partition& partition);
/// sum_j F_j - sum_j (1/V'_j) sum_{i,l in C_j} s'_il with S' = S + I.
double q_bbased(const SimilarityGraph& graph, const Partition& partition);
/// Weighted k-means target on g/d' with weights d', pairwise form.
double q_wglove(const SimilarityGraph& graph, const Partition& partition);

/// k-means target sum_j sum_{i in C_j} ||x_i - mu(C_j)||^2 of an embedding.
double q_gsa(const Matrix& X, const Partition& partition);

struct CriterionValues {
  double rcut = 0.0;
  std::optional<double> ncut;
  double nrcut = 0.0;
  double q_glove = 0.0;
  double q_kbased = 0.0;
  std::optional<double> q_bbased;
  std::optional<double> q_wglove;
};

/// Every graph criterion; NCut and the d'-based ones are left empty when
/// undefined for this graph.
CriterionValues evaluate_criteria(const SimilarityGraph& graph, const Partition& partition);

}  // namespace xgsc
