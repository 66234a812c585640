#include "xgsc/partition.hpp"

#include "xgsc/common.hpp"

#include <string>

namespace xgsc {

Partition::Partition(std::vector<int> assignment, int k)
    : assignment_(std::move(assignment)), k_(k) {
  if (k_ < 1) throw Error("cluster", "partition needs k >= 1");
  members_.resize(static_cast<std::size_t>(k_));
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    const int c = assignment_[i];
    if (c < 0 || c >= k_) {
      throw Error("cluster", "cluster id " + std::to_string(c) +
                                 " out of range at item " + std::to_string(i));
    }
    members_[static_cast<std::size_t>(c)].push_back(i);
  }
  for (int j = 0; j < k_; ++j) {
    if (members_[static_cast<std::size_t>(j)].empty()) {
      throw Error("cluster", "empty cluster " + std::to_string(j));
    }
  }
}

Partition Partition::single_cluster(std::size_t n) {
  return Partition(std::vector<int>(n, 0), 1);
}

}  // namespace xgsc
