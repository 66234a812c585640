#include "xgsc/gower.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xgsc {

Matrix k_pseudodistance(const SimilarityGraph& graph) {
  const auto n = graph.S.rows();
  Matrix A = Matrix::Ones(n, n) - Matrix::Identity(n, n) - graph.S;
  A.diagonal().setZero();
  return A;
}

Matrix b_pseudodistance(const SimilarityGraph& graph) {
  const auto n = graph.S.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(graph.degree_prime[i] > 0.0)) {
      throw Error("gower", "nonpositive d' = " + std::to_string(graph.degree_prime[i]) +
                               " at node " + std::to_string(i) +
                               "; shift similarities to be nonnegative");
    }
  }
  const Vector inv = graph.degree_prime.cwiseInverse();
  const Vector inv_sq = inv.cwiseAbs2();
  const Matrix E = Matrix::Ones(n, n) - Matrix::Identity(n, n);
  Matrix A = E * inv_sq.asDiagonal();
  A += inv_sq.asDiagonal() * E;
  A -= 2.0 * (inv.asDiagonal() * graph.S * inv.asDiagonal());

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const double entry =
          i == l ? 0.0 : inv_sq[i] + inv_sq[l] - 2.0 * graph.S(i, l) * inv[i] * inv[l];
      if (std::abs(A(i, l) - entry) > 1e-12) {
        throw Error("gower", "B pseudo-distance matrix form disagrees with entrywise form");
      }
    }
  }
  return A;
}

Matrix double_center(const Matrix& A) {
  if (A.rows() != A.cols()) throw Error("gower", "distance matrix must be square");
  const auto n = A.rows();
  if (n == 0) return A;
  const Vector row_mean = A.rowwise().mean();
  const Eigen::RowVectorXd col_mean = A.colwise().mean();
  const double grand = A.mean();
  Matrix K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      K(i, j) = -0.5 * (A(i, j) - row_mean[i] - col_mean[j] + grand);
    }
  }
  return 0.5 * (K + K.transpose());
}

LingoesCorrection lingoes_correct(const Matrix& A, const Matrix& K, const EigenOptions& options) {
  const EigenPairs lowest = eigendecompose_symmetric(K, 1, EigenEnd::smallest, options);
  const double lambda_min = lowest.values[0];
  if (lambda_min >= -1e-9) return {A, 0.0};
  const double sigma = -lambda_min + 1e-12;
  const auto n = A.rows();
  Matrix corrected = A + 2.0 * sigma * (Matrix::Ones(n, n) - Matrix::Identity(n, n));
  corrected.diagonal().setZero();
  return {std::move(corrected), sigma};
}

GowerEmbedding gower_embed_distances(const Matrix& A, GowerKind kind,
                                     std::optional<std::size_t> m,
                                     const EigenOptions& options) {
  const auto n = static_cast<std::size_t>(A.rows());
  GowerEmbedding out;
  out.kind = kind;
  if (n == 0) return out;

  Matrix K = double_center(A);
  const LingoesCorrection correction = lingoes_correct(A, K, options);
  if (correction.sigma > 0.0) {
    K = double_center(correction.A);
    out.lingoes_sigma = correction.sigma;
  }

  // Partial decomposition only when the caller bounds m on large inputs.
  const bool partial = m.has_value() && n > options.dense_limit;
  const std::size_t requested = partial ? std::min(*m, n) : n;
  EigenPairs pairs = eigendecompose_symmetric(K, std::max<std::size_t>(requested, 1),
                                              EigenEnd::largest, options);

  // Descending order.
  const auto count = pairs.values.size();
  Vector values = pairs.values.reverse();
  Matrix vectors = pairs.vectors.rowwise().reverse();
  for (Eigen::Index i = 0; i < count; ++i) {
    if (values[i] < 0.0 && values[i] >= -1e-9) values[i] = 0.0;
  }

  const double lambda_max = values[0];
  std::size_t positive = 0;
  for (Eigen::Index i = 0; i < count; ++i) {
    if (lambda_max > 0.0 && values[i] >= 1e-12 * lambda_max && values[i] > 0.0) ++positive;
  }
  std::size_t kept = positive;
  if (m.has_value()) {
    if (*m > positive) {
      out.warnings.push_back("requested m = " + std::to_string(*m) + " exceeds the " +
                             std::to_string(positive) + " positive eigenvalues; clamped");
    } else {
      kept = *m;
    }
  }

  const auto keep = static_cast<Eigen::Index>(kept);
  out.kept_eigenvalues = values.head(keep);
  out.Z = vectors.leftCols(keep) * out.kept_eigenvalues.cwiseSqrt().asDiagonal();
  return out;
}

GowerEmbedding gower_embed(const SimilarityGraph& graph, GowerKind kind,
                           std::optional<std::size_t> m, const EigenOptions& options) {
  const Matrix A = kind == GowerKind::K ? k_pseudodistance(graph) : b_pseudodistance(graph);
  return gower_embed_distances(A, kind, m, options);
}

EmbeddingMatrix to_embedding_matrix(const GowerEmbedding& embedding,
                                    std::vector<std::string> doc_ids) {
  EmbeddingMatrix out;
  out.doc_ids = std::move(doc_ids);
  out.rows = embedding.Z;
  out.space = embedding.kind == GowerKind::K ? SpaceTag::gower_K : SpaceTag::gower_B;
  return out;
}

}  // namespace xgsc
