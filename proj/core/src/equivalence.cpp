#include "xgsc/equivalence.hpp"

#include "xgsc/gower.hpp"
#include "xgsc/kmeans.hpp"
#include "xgsc/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace xgsc {

namespace {

constexpr std::size_t kMaxRecordedFailures = 20;

struct Recorder {
  EquivalenceReport& report;

  EquivalenceCheck& add(std::string name, std::string statement, double tolerance) {
    EquivalenceCheck c;
    c.name = std::move(name);
    c.statement = std::move(statement);
    c.tolerance = tolerance;
    report.checks.push_back(std::move(c));
    return report.checks.back();
  }

  void record(std::size_t index, const Partition& partition, double lhs, double rhs) {
    EquivalenceCheck& c = report.checks[index];
    const double r = relative_residual(lhs, rhs);
    ++c.evaluated;
    c.max_residual = std::max(c.max_residual, r);
    if (!(r <= c.tolerance)) {
      ++c.failures;
      if (report.failures.size() < kMaxRecordedFailures) {
        report.failures.push_back({c.name, partition.assignment(), partition.k(), r});
      }
    }
  }
};

}  // namespace

bool EquivalenceReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const EquivalenceCheck& c) { return c.failures == 0; });
}

double relative_residual(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

Partition random_partition(std::size_t n, int k, std::mt19937_64& rng) {
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw Error("cluster", "cannot split " + std::to_string(n) + " items into " +
                               std::to_string(k) + " clusters");
  }
  std::vector<int> assignment(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (std::size_t r = 0; r < n; ++r) {
    assignment[order[r]] = r < static_cast<std::size_t>(k) ? static_cast<int>(r) : pick(rng);
  }
  return Partition(std::move(assignment), k);
}

EquivalenceReport verify_equivalences(const SimilarityGraph& graph,
                                      const EquivalenceOptions& options) {
  const std::size_t n = graph.size();
  if (n == 0) throw Error("cluster", "empty graph");
  EquivalenceReport report;
  report.n = n;
  report.trials = options.trials;
  report.seed = options.seed;

  const bool b_defined = (graph.degree_prime.array() > 0.0).all();
  const std::string b_reason = "d' has nonpositive entries";

  Recorder rec{report};
  rec.add("a", "q_glove = 2 q_kbased", 1e-10);
  rec.add("b", "q_bbased = F - k + NRCut", 1e-10);
  rec.add("c", "q_wglove = q_bbased", 1e-10);
  rec.add("d", "RCut - 2 q_kbased = -(n - k) + sum_j V_j/|C_j|", 1e-9);
  rec.add("e", "k-means objective on K-embedding = q_kbased", 1e-6);
  rec.add("f", "weighted k-means objective on B-embedding = q_bbased", 1e-6);
  if (!b_defined) {
    for (const std::size_t idx : {std::size_t{1}, std::size_t{2}, std::size_t{5}}) {
      report.checks[idx].skipped = true;
      report.checks[idx].skip_reason = b_reason;
    }
  }

  const GowerEmbedding k_embedding = gower_embed(graph, GowerKind::K, std::nullopt, options.eigen);
  report.k_lingoes_sigma = k_embedding.lingoes_sigma;
  std::optional<GowerEmbedding> b_embedding;
  if (b_defined) {
    b_embedding = gower_embed(graph, GowerKind::B, std::nullopt, options.eigen);
    report.b_lingoes_sigma = b_embedding->lingoes_sigma;
  }
  const Vector& dp = graph.degree_prime;

  std::mt19937_64 rng(options.seed);
  const int k_cap = static_cast<int>(std::min<std::size_t>(n, 6));
  for (std::size_t t = 0; t < options.trials; ++t) {
    int k;
    if (options.ks.empty()) {
      k = std::uniform_int_distribution<int>(1, k_cap)(rng);
    } else {
      k = options.ks[t % options.ks.size()];
    }
    const Partition p = random_partition(n, k, rng);
    const Volumes v = volumes(graph, p);

    const double qk = q_kbased(graph, p);
    rec.record(0, p, q_glove(graph, p), 2.0 * qk);

    double rhs_d = -(static_cast<double>(n) - k);
    for (int j = 0; j < k; ++j) rhs_d += v.volume[j] / static_cast<double>(p.cluster_size(j));
    rec.record(3, p, rcut(graph, p) - 2.0 * qk, rhs_d);

    const double sigma_k = k_embedding.lingoes_sigma;
    rec.record(4, p, kmeans_objective(k_embedding.Z, p),
               qk + sigma_k * (static_cast<double>(n) - k));

    if (b_defined) {
      const double qb = q_bbased(graph, p);
      rec.record(1, p, qb, v.inverse_degree_prime_total - k + nrcut(graph, p));
      rec.record(2, p, q_wglove(graph, p), qb);
      double offset = 0.0;
      for (int j = 0; j < k; ++j) {
        double sq = 0.0;
        for (const std::size_t i : p.members(j)) {
          const double w = dp[static_cast<Eigen::Index>(i)];
          sq += w * w;
        }
        offset += (v.volume_prime[j] * v.volume_prime[j] - sq) / v.volume_prime[j];
      }
      rec.record(5, p, kmeans_objective(b_embedding->Z, p, &dp),
                 qb + b_embedding->lingoes_sigma * offset);
    }
  }
  return report;
}

}  // namespace xgsc
