#pragma once

#include <cstddef>
#include <vector>

namespace xgsc {

/// A partition of n items into k non-empty clusters. Cluster ids are 0-based
/// in memory; serialized reports use 1-based ids.
class Partition {
 public:
  /// Throws xgsc::Error if an id is outside [0, k) or a cluster is empty.
  Partition(std::vector<int> assignment, int k);

  static Partition single_cluster(std::size_t n);

  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return assignment_.size(); }
  int operator[](std::size_t i) const { return assignment_[i]; }
  const std::vector<int>& assignment() const noexcept { return assignment_; }

  const std::vector<std::size_t>& members(int cluster) const {
    return members_[static_cast<std::size_t>(cluster)];
  }
  std::size_t cluster_size(int cluster) const { return members(cluster).size(); }

  bool operator==(const Partition& other) const {
    return k_ == other.k_ && assignment_ == other.assignment_;
  }

 private:
  std::vector<int> assignment_;
  int k_;
  std::vector<std::vector<std::size_t>> members_;
};

}  // namespace xgsc
