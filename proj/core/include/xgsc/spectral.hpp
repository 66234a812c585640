#pragma once

#include "xgsc/docembed.hpp"
#include "xgsc/eigen_solver.hpp"
#include "xgsc/simgraph.hpp"

#include <string_view>

namespace xgsc {

enum class LaplacianKind { combinatorial, normalized, rationormalized };

std::string_view to_string(LaplacianKind kind);

struct Laplacian {
  LaplacianKind kind;
  Matrix M;
  /// Unit null vector of M: 1, D^{1/2} 1 or D'^{1/2} 1, normalized. Empty
  /// when unknown.
  Vector trivial;
};

/// combinatorial: L = D - S
/// normalized:    I - D^{-1/2} S D^{-1/2}          (requires d_i > 0)
/// rationormalized: D'^{-1/2} L D'^{-1/2}          (requires d'_i > 0)
/// The rationormalized form is cross-checked against
/// I - D'^{-1/2} (S + I) D'^{-1/2} to 1e-10.
Laplacian build_laplacian(const SimilarityGraph& graph, LaplacianKind kind);

/// I - D'^{-1/2} S' D'^{-1/2} with S' = S + I.
Matrix rationormalized_direct(const SimilarityGraph& graph);

struct SpectralEmbedding {
  /// Columns are eigenvectors v_2..v_{k+1} in ascending eigenvalue order.
  Matrix X;
  /// The k+1 smallest eigenvalues, including the discarded first one.
  Vector eigenvalues;
  LaplacianKind kind;
};

/// When the Laplacian carries its trivial vector u, the k smallest pairs of
/// M + c u u^T (c above the spectral radius) are taken, so the retained
/// vectors stay orthogonal to u even when the null space is degenerate.
/// eigenvalues[0] is then u^T M u.
SpectralEmbedding spectral_embed(const Laplacian& laplacian, std::size_t k,
                                 const EigenOptions& options = {});

EmbeddingMatrix to_embedding_matrix(const SpectralEmbedding& embedding,
                                    std::vector<std::string> doc_ids);

}  // namespace xgsc
