#pragma once

#include "xgsc/docembed.hpp"
#include "xgsc/partition.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace xgsc {

/// Cosine similarity graph: symmetric S with zero diagonal, degrees
/// d_i = sum_l s_il and d'_i = d_i + 1.
struct SimilarityGraph {
  Matrix S;
  Vector degree;
  Vector degree_prime;
  /// Provenance notes, e.g. when similarities were shifted.
  std::vector<std::string> notes;

  std::size_t size() const noexcept { return static_cast<std::size_t>(S.rows()); }
};

/// s_il = row_i . row_l for i != l. Rows must be unit length.
SimilarityGraph build_similarity(const EmbeddingMatrix& emb);

/// Wraps an explicit similarity matrix. Throws unless S is square, symmetric
/// within 1e-12 and has an exactly zero diagonal.
SimilarityGraph graph_from_matrix(Matrix S);

double min_off_diagonal(const SimilarityGraph& graph);

/// Affine map s -> (s - s_min) / (1 - s_min) on off-diagonal entries.
/// Requires a negative off-diagonal minimum.
SimilarityGraph shift_nonnegative(const SimilarityGraph& graph);

struct Volumes {
  Vector volume;        ///< V_j = sum_{i in C_j} d_i
  Vector volume_prime;  ///< V'_j = V_j + |C_j|
  Vector inverse_degree_prime;  ///< F_j = sum_{i in C_j} 1 / d'_i
  double inverse_degree_prime_total = 0.0;  ///< F
};

Volumes volumes(const SimilarityGraph& graph, const Partition& partition);

enum class DegreeWeighting { degree, degree_plus_one };

/// omega_i = d_i or 1 + d_i.
Vector degree_weights(const SimilarityGraph& graph, DegreeWeighting mode);

/// Binary dump: little-endian uint64 n, then n*n row-major float64 values.
void write_similarity_binary(std::ostream& out, const SimilarityGraph& graph);
SimilarityGraph read_similarity_binary(std::istream& in);

}  // namespace xgsc
