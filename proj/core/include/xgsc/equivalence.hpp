#pragma once

#include "xgsc/eigen_solver.hpp"
#include "xgsc/partition.hpp"
#include "xgsc/simgraph.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace xgsc {

struct EquivalenceOptions {
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  /// Cluster counts to draw from; empty means uniform over 1..min(n, 6).
  std::vector<int> ks{};
  EigenOptions eigen{};
};

struct EquivalenceCheck {
  std::string name;
  std::string statement;
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  bool skipped = false;
  std::string skip_reason;
};

struct EquivalenceFailure {
  std::string check;
  std::vector<int> assignment;
  int k = 0;
  double residual = 0.0;
};

struct EquivalenceReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double k_lingoes_sigma = 0.0;
  double b_lingoes_sigma = 0.0;
  std::vector<EquivalenceCheck> checks;
  /// First failures only (at most 20).
  std::vector<EquivalenceFailure> failures;

  bool passed() const;
};

/// Uniformly random assignment with every cluster non-empty.
Partition random_partition(std::size_t n, int k, std::mt19937_64& rng);

/// |a - b| / max(1, |a|, |b|).
double relative_residual(double a, double b);

/// Evaluates, over random partitions:
///  (a) q_glove = 2 q_kbased
///  (b) q_bbased = F - k + NRCut
///  (c) q_wglove = q_bbased
///  (d) RCut - 2 q_kbased = -(n - k) + sum_j V_j / |C_j|
///  (e) k-means objective on the K-embedding = q_kbased (+ Lingoes offset)
///  (f) weighted k-means objective on the B-embedding with weights d'
///      = q_bbased (+ Lingoes offset)
EquivalenceReport verify_equivalences(const SimilarityGraph& graph,
                                      const EquivalenceOptions& options = {});

}  // namespace xgsc
