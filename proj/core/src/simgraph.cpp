#include "xgsc/simgraph.hpp"

#include "xgsc/parallel.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

namespace xgsc {
namespace {

void compute_degrees(SimilarityGraph& g) {
  g.degree = g.S.rowwise().sum();
  g.degree_prime = g.degree.array() + 1.0;
}

}  // namespace

SimilarityGraph build_similarity(const EmbeddingMatrix& emb) {
  const auto n = static_cast<Eigen::Index>(emb.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = emb.rows.row(i).norm();
    if (std::abs(norm - 1.0) > 1e-6) {
      throw Error("simgraph", "row " + std::to_string(i) + " is not unit length (norm " +
                                  std::to_string(norm) + ")");
    }
  }
  SimilarityGraph g;
  g.S = Matrix::Zero(n, n);
  // Upper triangle once, mirrored below.
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    for (auto i = static_cast<Eigen::Index>(begin); i < static_cast<Eigen::Index>(end); ++i) {
      for (Eigen::Index l = i + 1; l < n; ++l) g.S(i, l) = emb.rows.row(i).dot(emb.rows.row(l));
    }
  });
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index l = i + 1; l < n; ++l) g.S(l, i) = g.S(i, l);
  }
  compute_degrees(g);
  return g;
}

SimilarityGraph graph_from_matrix(Matrix S) {
  if (S.rows() != S.cols()) throw Error("simgraph", "similarity matrix must be square");
  const Eigen::Index n = S.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (S(i, i) != 0.0) {
      throw Error("simgraph", "diagonal entry " + std::to_string(i) + " is not zero");
    }
    for (Eigen::Index l = i + 1; l < n; ++l) {
      if (std::abs(S(i, l) - S(l, i)) > 1e-12) {
        throw Error("simgraph", "similarity matrix is not symmetric at (" + std::to_string(i) +
                                    "," + std::to_string(l) + ")");
      }
    }
  }
  SimilarityGraph g;
  g.S = std::move(S);
  compute_degrees(g);
  return g;
}

double min_off_diagonal(const SimilarityGraph& graph) {
  const Eigen::Index n = graph.S.rows();
  double lowest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index l = 0; l < n; ++l) {
      if (i != l) lowest = std::min(lowest, graph.S(i, l));
    }
  }
  return lowest;
}

SimilarityGraph shift_nonnegative(const SimilarityGraph& graph) {
  const double s_min = min_off_diagonal(graph);
  if (!(s_min < 0.0)) {
    throw Error("simgraph", "shift_nonnegative requires a negative similarity (minimum is " +
                                std::to_string(s_min) + ")");
  }
  if (s_min >= 1.0) throw Error("simgraph", "degenerate graph: all similarities equal 1");
  SimilarityGraph out;
  out.S = ((graph.S.array() - s_min) / (1.0 - s_min)).matrix();
  out.S.diagonal().setZero();
  compute_degrees(out);
  out.notes = graph.notes;
  out.notes.push_back("similarities shifted by s -> (s - s_min) / (1 - s_min), s_min = " +
                      std::to_string(s_min));
  return out;
}

Volumes volumes(const SimilarityGraph& graph, const Partition& partition) {
  if (partition.size() != graph.size()) {
    throw Error("simgraph", "partition size does not match graph size");
  }
  const int k = partition.k();
  Volumes v;
  v.volume = Vector::Zero(k);
  v.volume_prime = Vector::Zero(k);
  v.inverse_degree_prime = Vector::Zero(k);
  for (int j = 0; j < k; ++j) {
    for (const std::size_t i : partition.members(j)) {
      const auto ii = static_cast<Eigen::Index>(i);
      v.volume[j] += graph.degree[ii];
      v.inverse_degree_prime[j] += 1.0 / graph.degree_prime[ii];
    }
    v.volume_prime[j] = v.volume[j] + static_cast<double>(partition.cluster_size(j));
  }
  v.inverse_degree_prime_total = v.inverse_degree_prime.sum();
  return v;
}

Vector degree_weights(const SimilarityGraph& graph, DegreeWeighting mode) {
  return mode == DegreeWeighting::degree ? graph.degree : graph.degree_prime;
}

void write_similarity_binary(std::ostream& out, const SimilarityGraph& graph) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  const auto n = static_cast<std::uint64_t>(graph.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (Eigen::Index i = 0; i < graph.S.rows(); ++i) {
    for (Eigen::Index l = 0; l < graph.S.cols(); ++l) {
      const double v = graph.S(i, l);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
  if (!out) throw Error("simgraph", "failed writing similarity dump");
}

SimilarityGraph read_similarity_binary(std::istream& in) {
  std::uint64_t n = 0;
  if (!in.read(reinterpret_cast<char*>(&n), sizeof(n))) {
    throw Error("simgraph", "truncated similarity dump header");
  }
  if (n > (1u << 20)) throw Error("simgraph", "implausible matrix order in dump");
  Matrix S(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    for (Eigen::Index l = 0; l < S.cols(); ++l) {
      double v = 0.0;
      if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
        throw Error("simgraph", "truncated similarity dump body");
      }
      S(i, l) = v;
    }
  }
  return graph_from_matrix(std::move(S));
}

}  // namespace xgsc
