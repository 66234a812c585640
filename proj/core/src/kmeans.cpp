#include "xgsc/kmeans.hpp"

#include "xgsc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace xgsc {

std::string_view to_string(KMeansVariant variant) {
  switch (variant) {
    case KMeansVariant::standard: return "kmeans";
    case KMeansVariant::weighted: return "weighted_kmeans";
    case KMeansVariant::spherical: return "spherical_kmeans";
  }
  return "unknown";
}

namespace {

double weight_of(const Vector* weights, Eigen::Index i) {
  return weights == nullptr ? 1.0 : (*weights)[i];
}

void validate_input(const Matrix& X, const Vector* weights, std::size_t k) {
  const auto n = static_cast<std::size_t>(X.rows());
  if (k == 0) throw Error("cluster", "k must be at least 1");
  if (k > n) {
    throw Error("cluster", "k = " + std::to_string(k) + " exceeds the number of points " +
                               std::to_string(n));
  }
  if (!X.allFinite()) throw Error("cluster", "embedding contains non-finite values");
  if (weights != nullptr) {
    if (weights->size() != X.rows()) throw Error("cluster", "weight count mismatch");
    for (Eigen::Index i = 0; i < weights->size(); ++i) {
      if (!((*weights)[i] > 0.0)) throw Error("cluster", "weights must be positive");
    }
  }
}

/// k-means++ seeding with probabilities proportional to w_i D(x_i)^2.
Matrix plus_plus_init(const Matrix& X, const Vector* weights, std::size_t k,
                      std::mt19937_64& rng) {
  const Eigen::Index n = X.rows();
  Matrix centers(static_cast<Eigen::Index>(k), X.cols());
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  Eigen::Index first = pick(rng);
  centers.row(0) = X.row(first);
  chosen[static_cast<std::size_t>(first)] = true;

  Vector nearest(n);
  for (Eigen::Index i = 0; i < n; ++i) nearest[i] = (X.row(i) - centers.row(0)).squaredNorm();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += weight_of(weights, i) * nearest[i];
    Eigen::Index next = -1;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double running = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        running += weight_of(weights, i) * nearest[i];
        if (running > target && nearest[i] > 0.0) {
          next = i;
          break;
        }
      }
      if (next < 0) {
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (nearest[i] > 0.0) {
            next = i;
            break;
          }
        }
      }
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!chosen[static_cast<std::size_t>(i)]) {
          next = i;
          break;
        }
      }
    }
    chosen[static_cast<std::size_t>(next)] = true;
    centers.row(static_cast<Eigen::Index>(c)) = X.row(next);
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], (X.row(i) - X.row(next)).squaredNorm());
    }
  }
  return centers;
}

std::vector<int> assign_nearest(const Matrix& X, const Matrix& centers) {
  std::vector<int> out(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < centers.rows(); ++j) {
      const double d = (X.row(i) - centers.row(j)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

std::vector<int> assign_cosine(const Matrix& X, const Matrix& centers) {
  std::vector<int> out(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    int best = 0;
    double best_c = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < centers.rows(); ++j) {
      const double c = X.row(i).dot(centers.row(j));
      if (c > best_c) {
        best_c = c;
        best = static_cast<int>(j);
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

/// Moves, for each empty cluster, the point with the largest cost among
/// clusters holding at least two points.
template <typename Cost>
void repair_empty(std::vector<int>& assignment, std::size_t k, Cost cost) {
  std::vector<std::size_t> sizes(k, 0);
  for (const int a : assignment) ++sizes[static_cast<std::size_t>(a)];
  for (std::size_t j = 0; j < k; ++j) {
    if (sizes[j] > 0) continue;
    std::size_t best = 0;
    double best_cost = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (sizes[static_cast<std::size_t>(assignment[i])] < 2) continue;
      const double c = cost(i);
      if (c > best_cost) {
        best_cost = c;
        best = i;
      }
    }
    --sizes[static_cast<std::size_t>(assignment[best])];
    assignment[best] = static_cast<int>(j);
    sizes[j] = 1;
  }
}

ClusteringResult best_of(const std::vector<ClusteringResult>& runs) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].objective < runs[best].objective ||
        (runs[r].objective == runs[best].objective && runs[r].seed < runs[best].seed)) {
      best = r;
    }
  }
  return runs[best];
}

template <typename Run>
ClusteringResult run_restarts(const KMeansOptions& options, Run run) {
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  std::vector<std::optional<ClusteringResult>> runs(restarts);
  parallel_for(restarts, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) runs[r] = run(options.seed + r);
  });
  std::vector<ClusteringResult> done;
  done.reserve(restarts);
  for (auto& r : runs) done.push_back(std::move(*r));
  return best_of(done);
}

}  // namespace

Matrix cluster_centers(const Matrix& X, const Partition& partition, const Vector* weights) {
  Matrix centers = Matrix::Zero(partition.k(), X.cols());
  for (int j = 0; j < partition.k(); ++j) {
    double total = 0.0;
    for (const std::size_t i : partition.members(j)) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double w = weight_of(weights, ii);
      centers.row(j) += w * X.row(ii);
      total += w;
    }
    centers.row(j) /= total;
  }
  return centers;
}

double kmeans_objective(const Matrix& X, const Partition& partition, const Vector* weights) {
  const Matrix centers = cluster_centers(X, partition, weights);
  double total = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    total += weight_of(weights, i) *
             (X.row(i) - centers.row(partition[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return total;
}

double pairwise_kmeans_objective(const Matrix& X, const Partition& partition,
                                 const Vector* weights) {
  double total = 0.0;
  for (int j = 0; j < partition.k(); ++j) {
    const auto& members = partition.members(j);
    double volume = 0.0;
    double sum = 0.0;
    for (const std::size_t i : members) {
      const auto ii = static_cast<Eigen::Index>(i);
      volume += weight_of(weights, ii);
      for (const std::size_t l : members) {
        const auto ll = static_cast<Eigen::Index>(l);
        sum += weight_of(weights, ii) * weight_of(weights, ll) *
               (X.row(ii) - X.row(ll)).squaredNorm();
      }
    }
    total += sum / (2.0 * volume);
  }
  return total;
}

double spherical_objective(const Matrix& X, const Partition& partition) {
  Matrix centers = cluster_centers(X, partition);
  double total = 0.0;
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    const double norm = centers.row(j).norm();
    if (norm > 0.0) centers.row(j) /= norm;
  }
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    total += 1.0 - X.row(i).dot(centers.row(partition[static_cast<std::size_t>(i)]));
  }
  return total;
}

ClusteringResult lloyd_run(const Matrix& X, const Vector* weights, std::size_t k,
                           std::uint64_t seed, std::size_t max_iter, double tol) {
  validate_input(X, weights, k);
  std::mt19937_64 rng(seed);
  Matrix centers = plus_plus_init(X, weights, k, rng);
  std::vector<int> assignment = assign_nearest(X, centers);

  ClusteringResult result{Partition::single_cluster(static_cast<std::size_t>(X.rows())),
                          {}, 0.0, 0, seed, {}, weights ? KMeansVariant::weighted
                                                        : KMeansVariant::standard, {}};
  const int kk = static_cast<int>(k);
  for (std::size_t iter = 1; iter <= std::max<std::size_t>(1, max_iter); ++iter) {
    repair_empty(assignment, k, [&](std::size_t i) {
      const auto ii = static_cast<Eigen::Index>(i);
      return weight_of(weights, ii) *
             (X.row(ii) - centers.row(assignment[i])).squaredNorm();
    });
    Partition partition(assignment, kk);
    centers = cluster_centers(X, partition, weights);
    double objective = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      objective += weight_of(weights, i) *
                   (X.row(i) - centers.row(assignment[static_cast<std::size_t>(i)])).squaredNorm();
    }
    const double previous =
        result.objective_trace.empty() ? std::numeric_limits<double>::infinity()
                                       : result.objective_trace.back();
    result.objective_trace.push_back(objective);
    result.iterations = iter;
    result.partition = std::move(partition);
    result.objective = objective;

    if (std::isfinite(previous) && previous - objective <= tol * previous) break;
    std::vector<int> next = assign_nearest(X, centers);
    if (next == assignment) break;
    assignment = std::move(next);
  }
  result.centers = centers;
  return result;
}

ClusteringResult spherical_run(const Matrix& X, std::size_t k, std::uint64_t seed,
                               std::size_t max_iter, double tol) {
  validate_input(X, nullptr, k);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    if (std::abs(X.row(i).norm() - 1.0) > 1e-6) {
      throw Error("cluster", "spherical k-means requires unit rows (row " +
                                 std::to_string(i) + ")");
    }
  }
  std::mt19937_64 rng(seed);
  Matrix centers = plus_plus_init(X, nullptr, k, rng);
  std::vector<int> assignment = assign_cosine(X, centers);

  ClusteringResult result{Partition::single_cluster(static_cast<std::size_t>(X.rows())),
                          {}, 0.0, 0, seed, {}, KMeansVariant::spherical, {}};
  const int kk = static_cast<int>(k);
  for (std::size_t iter = 1; iter <= std::max<std::size_t>(1, max_iter); ++iter) {
    repair_empty(assignment, k, [&](std::size_t i) {
      return 1.0 - X.row(static_cast<Eigen::Index>(i)).dot(centers.row(assignment[i]));
    });
    // Reseed zero-norm means with the worst-fitting point of a larger cluster.
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt > 2 * k) throw Error("cluster", "cannot reseed a zero-norm spherical center");
      Partition partition(assignment, kk);
      centers = cluster_centers(X, partition);
      int degenerate = -1;
      for (int j = 0; j < kk; ++j) {
        const double norm = centers.row(j).norm();
        if (norm <= 1e-12) {
          degenerate = j;
        } else {
          centers.row(j) /= norm;
        }
      }
      if (degenerate < 0) break;
      std::vector<std::size_t> sizes(k, 0);
      for (const int a : assignment) ++sizes[static_cast<std::size_t>(a)];
      std::size_t worst = assignment.size();
      double worst_cos = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] == degenerate || sizes[static_cast<std::size_t>(assignment[i])] < 2 ||
            centers.row(assignment[i]).norm() <= 1e-12) {
          continue;
        }
        const double c = X.row(static_cast<Eigen::Index>(i)).dot(centers.row(assignment[i]));
        if (c < worst_cos) {
          worst_cos = c;
          worst = i;
        }
      }
      if (worst == assignment.size()) {
        throw Error("cluster", "cannot reseed a zero-norm spherical center");
      }
      // Move every member of the degenerate cluster to its nearest other center,
      // then let the worst-fitting point seed it.
      for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] == degenerate) assignment[i] = assignment[worst];
      }
      assignment[worst] = degenerate;
    }
    double objective = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      objective += 1.0 - X.row(i).dot(centers.row(assignment[static_cast<std::size_t>(i)]));
    }
    objective = std::max(objective, 0.0);
    const double previous =
        result.objective_trace.empty() ? std::numeric_limits<double>::infinity()
                                       : result.objective_trace.back();
    result.objective_trace.push_back(objective);
    result.iterations = iter;
    result.partition = Partition(assignment, kk);
    result.objective = objective;
    if (std::isfinite(previous) && previous - objective <= tol * previous) break;
    std::vector<int> next = assign_cosine(X, centers);
    if (next == assignment) break;
    assignment = std::move(next);
  }
  result.centers = centers;
  return result;
}

ClusteringResult kmeans(const EmbeddingMatrix& emb, const KMeansOptions& options) {
  ClusteringResult r = run_restarts(options, [&](std::uint64_t seed) {
    return lloyd_run(emb.rows, nullptr, options.k, seed, options.max_iter, options.tol);
  });
  r.embedding_tag = std::string(to_string(emb.space));
  return r;
}

ClusteringResult weighted_kmeans(const EmbeddingMatrix& emb, const KMeansOptions& options) {
  if (!emb.row_weights) throw Error("cluster", "weighted k-means needs row weights");
  const Vector& w = *emb.row_weights;
  ClusteringResult r = run_restarts(options, [&](std::uint64_t seed) {
    return lloyd_run(emb.rows, &w, options.k, seed, options.max_iter, options.tol);
  });
  r.embedding_tag = std::string(to_string(emb.space));
  return r;
}

ClusteringResult spherical_kmeans(const EmbeddingMatrix& emb, const KMeansOptions& options) {
  ClusteringResult r = run_restarts(options, [&](std::uint64_t seed) {
    return spherical_run(emb.rows, options.k, seed, options.max_iter, options.tol);
  });
  r.embedding_tag = std::string(to_string(emb.space));
  return r;
}

}  // namespace xgsc
