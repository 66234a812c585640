#include "xgsc/objectives.hpp"

#include "xgsc/kmeans.hpp"

namespace xgsc {

namespace {

void check_sizes(const SimilarityGraph& graph, const Partition& partition) {
  if (graph.size() != partition.size()) {
    throw Error("cluster", "partition covers " + std::to_string(partition.size()) +
                               " items but the graph has " + std::to_string(graph.size()));
  }
}

bool positive_degree_prime(const SimilarityGraph& graph) {
  return (graph.degree_prime.array() > 0.0).all();
}

}  // namespace

double cut_value(const SimilarityGraph& graph, const Partition& partition, int j) {
  check_sizes(graph, partition);
  double total = 0.0;
  for (const std::size_t i : partition.members(j)) {
    for (std::size_t l = 0; l < partition.size(); ++l) {
      if (partition[l] != j) {
        total += graph.S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l));
      }
    }
  }
  return total;
}

double within_similarity(const SimilarityGraph& graph, const Partition& partition, int j) {
  check_sizes(graph, partition);
  double total = 0.0;
  const auto& members = partition.members(j);
  for (const std::size_t i : members) {
    for (const std::size_t l : members) {
      if (i != l) total += graph.S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l));
    }
  }
  return total;
}

double rcut(const SimilarityGraph& graph, const Partition& partition) {
  double total = 0.0;
  for (int j = 0; j < partition.k(); ++j) {
    total += cut_value(graph, partition, j) / static_cast<double>(partition.cluster_size(j));
  }
  return total;
}

double ncut(const SimilarityGraph& graph, const Partition& partition) {
  const Volumes v = volumes(graph, partition);
  double total = 0.0;
  for (int j = 0; j < partition.k(); ++j) {
    if (!(v.volume[j] != 0.0)) {
      throw Error("cluster", "NCut undefined: cluster " + std::to_string(j + 1) +
                                 " has zero volume");
    }
    total += cut_value(graph, partition, j) / v.volume[j];
  }
  return total;
}

double nrcut(const SimilarityGraph& graph, const Partition& partition) {
  const Volumes v = volumes(graph, partition);
  double total = 0.0;
  for (int j = 0; j < partition.k(); ++j) {
    if (!(v.volume_prime[j] != 0.0)) {
      throw Error("cluster", "NRCut undefined: cluster " + std::to_string(j + 1) +
                                 " has zero volume'");
    }
    total += cut_value(graph, partition, j) / v.volume_prime[j];
  }
  return total;
}

double q_glove(const SimilarityGraph& graph, const Partition& partition) {
  check_sizes(graph, partition);
  double total = 0.0;
  for (int j = 0; j < partition.k(); ++j) {
    const auto& members = partition.members(j);
    double sum = 0.0;
    for (const std::size_t i : members) {
      for (const std::size_t l : members) {
        if (i == l) continue;
        sum += 2.0 - 2.0 * graph.S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l));
      }
    }
    total += sum / (2.0 * static_cast<double>(members.size()));
  }
  return total;
}

double q_kbased(const SimilarityGraph& graph, const Partition& partition) {
  check_sizes(graph, partition);
  double total = 0.5 * (static_cast<double>(partition.size()) - partition.k());
  for (int j = 0; j < partition.k(); ++j) {
    total -= within_similarity(graph, partition, j) /
             (2.0 * static_cast<double>(partition.cluster_size(j)));
  }
  return total;
}

double q_bbased(const SimilarityGraph& graph, const Partition& partition) {
  check_sizes(graph, partition);
  if (!positive_degree_prime(graph)) {
    throw Error("cluster", "B-based criterion needs positive d'");
  }
  const Volumes v = volumes(graph, partition);
  double total = 0.0;
  for (int j = 0; j < partition.k(); ++j) {
    // S' = S + I contributes |C_j| on the diagonal.
    const double within_prime =
        within_similarity(graph, partition, j) + static_cast<double>(partition.cluster_size(j));
    total += v.inverse_degree_prime[j] - within_prime / v.volume_prime[j];
  }
  return total;
}

double q_wglove(const SimilarityGraph& graph, const Partition& partition) {
  check_sizes(graph, partition);
  if (!positive_degree_prime(graph)) {
    throw Error("cluster", "weighted GloVe criterion needs positive d'");
  }
  const Vector& dp = graph.degree_prime;
  double total = 0.0;
  for (int j = 0; j < partition.k(); ++j) {
    const auto& members = partition.members(j);
    double volume = 0.0;
    for (const std::size_t i : members) volume += dp[static_cast<Eigen::Index>(i)];
    double sum = 0.0;
    for (const std::size_t i : members) {
      for (const std::size_t l : members) {
        if (i == l) continue;
        const auto ii = static_cast<Eigen::Index>(i);
        const auto ll = static_cast<Eigen::Index>(l);
        const double dist = 1.0 / (dp[ii] * dp[ii]) + 1.0 / (dp[ll] * dp[ll]) -
                            2.0 * graph.S(ii, ll) / (dp[ii] * dp[ll]);
        sum += dp[ii] * dp[ll] * dist;
      }
    }
    total += sum / (2.0 * volume);
  }
  return total;
}

double q_gsa(const Matrix& X, const Partition& partition) {
  return kmeans_objective(X, partition);
}

CriterionValues evaluate_criteria(const SimilarityGraph& graph, const Partition& partition) {
  CriterionValues out;
  out.rcut = rcut(graph, partition);
  const Volumes v = volumes(graph, partition);
  if ((v.volume.array() != 0.0).all()) out.ncut = ncut(graph, partition);
  out.nrcut = nrcut(graph, partition);
  out.q_glove = q_glove(graph, partition);
  out.q_kbased = q_kbased(graph, partition);
  if (positive_degree_prime(graph)) {
    out.q_bbased = q_bbased(graph, partition);
    out.q_wglove = q_wglove(graph, partition);
  }
  return out;
}

}  // namespace xgsc
