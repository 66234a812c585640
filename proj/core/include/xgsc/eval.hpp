#pragma once

#include "xgsc/partition.hpp"
#include "xgsc/simgraph.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace xgsc {

using CountMatrix = std::vector<std::vector<long long>>;

/// Maximum-weight one-to-one matching of rows to columns of a rectangular
/// matrix. Returns, per row, the matched column or -1 when rows outnumber
/// columns.
std::vector<int> max_weight_matching(const CountMatrix& weights);

struct ConfusionTable {
  /// Gold labels (rows), sorted.
  std::vector<std::string> labels;
  /// counts[label][cluster].
  CountMatrix counts;
  /// Matched cluster per label, -1 if unmatched.
  std::vector<int> matching;
  long long n = 0;
  long long correct = 0;
  double error_pct = 0.0;

  std::size_t clusters() const { return counts.empty() ? 0 : counts.front().size(); }
};

ConfusionTable confusion(const Partition& partition, const std::vector<std::string>& labels);
ConfusionTable confusion_from_counts(CountMatrix counts, std::vector<std::string> labels);

struct PairwiseScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

/// Pairwise F1 over document pairs co-clustered vs co-labeled. Undefined
/// precision or recall counts as 0.
PairwiseScore f_measure(const Partition& partition, const std::vector<std::string>& labels);
PairwiseScore f_measure_from_counts(const CountMatrix& counts);

/// Mean over labels of the F1 of each label with its matched cluster.
double macro_f1(const ConfusionTable& table);

struct DocumentDiagnostics {
  double top_mean = 0.0;
  double bottom_mean = 0.0;
  double top_minus_bottom = 0.0;
  std::optional<double> within_mean;
  std::optional<double> outside_mean;
  std::optional<double> within_minus_outside;
};

struct DiagnosticsBundle {
  /// Neighbours averaged per document: ceil(0.05 (n - 1)).
  std::size_t quantile_count = 0;
  std::vector<DocumentDiagnostics> documents;
  /// Each column sorted ascending (missing values omitted).
  std::vector<double> top_sorted;
  std::vector<double> bottom_sorted;
  std::vector<double> top_minus_bottom_sorted;
  std::vector<double> within_sorted;
  std::vector<double> outside_sorted;
  std::vector<double> within_minus_outside_sorted;
};

/// Per-document similarity profile. `labels` may be null, leaving the class
/// columns missing.
DiagnosticsBundle similarity_diagnostics(const SimilarityGraph& graph,
                                         const std::vector<std::string>* labels);

void write_diagnostics_csv(std::ostream& out, const DiagnosticsBundle& bundle,
                           const std::vector<std::string>& doc_ids);
void write_sorted_diagnostics_csv(std::ostream& out, const DiagnosticsBundle& bundle);
void write_confusion_csv(std::ostream& out, const ConfusionTable& table);

}  // namespace xgsc
