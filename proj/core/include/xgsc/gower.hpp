#pragma once

#include "xgsc/docembed.hpp"
#include "xgsc/eigen_solver.hpp"
#include "xgsc/simgraph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xgsc {

enum class GowerKind { K, B };

/// A = 11^T - I - S: off-diagonal 1 - s_il, zero diagonal.
Matrix k_pseudodistance(const SimilarityGraph& graph);

/// E D'^{-2} + D'^{-2} E - 2 D'^{-1} S D'^{-1} with E = 11^T - I, i.e.
/// 1/d'_i^2 + 1/d'_l^2 - 2 s_il / (d'_i d'_l) off the diagonal.
Matrix b_pseudodistance(const SimilarityGraph& graph);

/// -1/2 (I - 11^T/n) A (I - 11^T/n).
Matrix double_center(const Matrix& A);

struct LingoesCorrection {
  Matrix A;
  double sigma = 0.0;
};

/// If K has an eigenvalue below -1e-9, adds 2 sigma off the diagonal of A
/// with sigma = -lambda_min (+1e-12 slack) so the recentered matrix is PSD.
/// Otherwise returns A unchanged with sigma = 0.
LingoesCorrection lingoes_correct(const Matrix& A, const Matrix& K,
                                  const EigenOptions& options = {});

struct GowerEmbedding {
  /// Row i is the embedded point of document i.
  Matrix Z;
  /// Retained eigenvalues in descending order.
  Vector kept_eigenvalues;
  double lingoes_sigma = 0.0;
  GowerKind kind = GowerKind::K;
  std::vector<std::string> warnings;
};

/// Classical scaling of a squared pseudo-distance matrix: Z = V_m Lambda_m^{1/2}
/// over the m largest eigenvalues of the double-centered matrix. Without m,
/// keeps every eigenvalue >= 1e-12 * lambda_max.
GowerEmbedding gower_embed_distances(const Matrix& A, GowerKind kind,
                                     std::optional<std::size_t> m = std::nullopt,
                                     const EigenOptions& options = {});

/// K-embedding (kind K) or B-embedding (kind B) of a similarity graph.
GowerEmbedding gower_embed(const SimilarityGraph& graph, GowerKind kind,
                           std::optional<std::size_t> m = std::nullopt,
                           const EigenOptions& options = {});

EmbeddingMatrix to_embedding_matrix(const GowerEmbedding& embedding,
                                    std::vector<std::string> doc_ids);

}  // namespace xgsc
