#include "xgsc/spectral.hpp"

#include <cmath>
#include <string>

namespace xgsc {

std::string_view to_string(LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::combinatorial: return "combinatorial";
    case LaplacianKind::normalized: return "normalized";
    case LaplacianKind::rationormalized: return "rationormalized";
  }
  return "unknown";
}

namespace {

Vector inverse_sqrt_degrees(const Vector& degrees, const char* what) {
  Vector out(degrees.size());
  for (Eigen::Index i = 0; i < degrees.size(); ++i) {
    if (!(degrees[i] > 0.0)) {
      throw Error("spectral", std::string("isolated node ") + std::to_string(i) + ": " + what +
                                  " = " + std::to_string(degrees[i]) + " is not positive");
    }
    out[i] = 1.0 / std::sqrt(degrees[i]);
  }
  return out;
}

}  // namespace

Matrix rationormalized_direct(const SimilarityGraph& graph) {
  const Vector scale = inverse_sqrt_degrees(graph.degree_prime, "d'");
  const auto n = graph.S.rows();
  const Matrix s_prime = graph.S + Matrix::Identity(n, n);
  return Matrix::Identity(n, n) - scale.asDiagonal() * s_prime * scale.asDiagonal();
}

Laplacian build_laplacian(const SimilarityGraph& graph, LaplacianKind kind) {
  const auto n = graph.S.rows();
  Matrix combinatorial = -graph.S;
  combinatorial.diagonal() += graph.degree;

  switch (kind) {
    case LaplacianKind::combinatorial:
      return {kind, std::move(combinatorial), Vector::Constant(n, 1.0 / std::sqrt(double(n)))};
    case LaplacianKind::normalized: {
      const Vector scale = inverse_sqrt_degrees(graph.degree, "d");
      Matrix M = Matrix::Identity(n, n) - scale.asDiagonal() * graph.S * scale.asDiagonal();
      return {kind, std::move(M), graph.degree.cwiseSqrt().normalized()};
    }
    case LaplacianKind::rationormalized: {
      const Vector scale = inverse_sqrt_degrees(graph.degree_prime, "d'");
      Matrix M = scale.asDiagonal() * combinatorial * scale.asDiagonal();
      const double gap = (M - rationormalized_direct(graph)).cwiseAbs().maxCoeff();
      if (gap > 1e-10) {
        throw Error("spectral", "rationormalized Laplacian forms disagree by " +
                                    std::to_string(gap));
      }
      return {kind, std::move(M), graph.degree_prime.cwiseSqrt().normalized()};
    }
  }
  throw Error("spectral", "unknown Laplacian kind");
}

SpectralEmbedding spectral_embed(const Laplacian& laplacian, std::size_t k,
                                 const EigenOptions& options) {
  const auto n = static_cast<std::size_t>(laplacian.M.rows());
  if (k == 0) throw Error("spectral", "spectral embedding needs k >= 1");
  if (k + 1 > n) {
    throw Error("spectral", "k + 1 = " + std::to_string(k + 1) + " exceeds n = " +
                                std::to_string(n));
  }
  SpectralEmbedding out;
  out.kind = laplacian.kind;
  const auto kk = static_cast<Eigen::Index>(k);
  const Vector& u = laplacian.trivial;
  if (u.size() != laplacian.M.rows()) {
    EigenPairs pairs = eigendecompose_symmetric(laplacian.M, k + 1, EigenEnd::smallest, options);
    out.X = pairs.vectors.rightCols(kk);
    out.eigenvalues = pairs.values;
    return out;
  }
  const double shift = 2.0 * laplacian.M.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  const Matrix deflated = laplacian.M + shift * u * u.transpose();
  EigenPairs pairs = eigendecompose_symmetric(deflated, k, EigenEnd::smallest, options);
  out.X = std::move(pairs.vectors);
  out.eigenvalues.resize(kk + 1);
  out.eigenvalues[0] = u.dot(laplacian.M * u);
  out.eigenvalues.tail(kk) = pairs.values;
  return out;
}

EmbeddingMatrix to_embedding_matrix(const SpectralEmbedding& embedding,
                                    std::vector<std::string> doc_ids) {
  EmbeddingMatrix out;
  out.doc_ids = std::move(doc_ids);
  out.rows = embedding.X;
  switch (embedding.kind) {
    case LaplacianKind::combinatorial: out.space = SpaceTag::spectral_L; break;
    case LaplacianKind::normalized: out.space = SpaceTag::spectral_N; break;
    case LaplacianKind::rationormalized: out.space = SpaceTag::spectral_R; break;
  }
  return out;
}

}  // namespace xgsc
