#include "xgsc/eval.hpp"

#include "xgsc/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <ostream>

namespace xgsc {

namespace {

/// Hungarian algorithm (potentials form) minimizing cost for rows <= cols.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const std::size_t m = cost.front().size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

double choose2(long long x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); }

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& field) {
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void write_optional(std::ostream& out, const std::optional<double>& value) {
  if (value) out << format_double(*value);
}

}  // namespace

std::vector<int> max_weight_matching(const CountMatrix& weights) {
  if (weights.empty() || weights.front().empty()) return std::vector<int>(weights.size(), -1);
  const std::size_t rows = weights.size();
  const std::size_t cols = weights.front().size();
  long long top = 0;
  for (const auto& row : weights) {
    if (row.size() != cols) throw Error("eval", "ragged count matrix");
    for (const long long w : row) top = std::max(top, w);
  }
  const bool transpose = rows > cols;
  const std::size_t a = transpose ? cols : rows;
  const std::size_t b = transpose ? rows : cols;
  std::vector<std::vector<double>> cost(a, std::vector<double>(b));
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      const long long w = transpose ? weights[j][i] : weights[i][j];
      cost[i][j] = static_cast<double>(top - w);
    }
  }
  const std::vector<int> assigned = min_cost_assignment(cost);
  if (!transpose) return assigned;
  std::vector<int> out(rows, -1);
  for (std::size_t i = 0; i < a; ++i) {
    if (assigned[i] >= 0) out[static_cast<std::size_t>(assigned[i])] = static_cast<int>(i);
  }
  return out;
}

ConfusionTable confusion_from_counts(CountMatrix counts, std::vector<std::string> labels) {
  if (counts.size() != labels.size()) throw Error("eval", "one label per count row required");
  ConfusionTable t;
  t.labels = std::move(labels);
  t.counts = std::move(counts);
  for (const auto& row : t.counts) {
    for (const long long c : row) {
      if (c < 0) throw Error("eval", "negative count");
      t.n += c;
    }
  }
  t.matching = max_weight_matching(t.counts);
  for (std::size_t i = 0; i < t.matching.size(); ++i) {
    if (t.matching[i] >= 0) t.correct += t.counts[i][static_cast<std::size_t>(t.matching[i])];
  }
  t.error_pct = t.n == 0 ? 0.0
                         : 100.0 * static_cast<double>(t.n - t.correct) / static_cast<double>(t.n);
  return t;
}

ConfusionTable confusion(const Partition& partition, const std::vector<std::string>& labels) {
  if (labels.size() != partition.size()) throw Error("eval", "one label per document required");
  std::map<std::string, std::size_t> index;
  for (const auto& l : labels) index.emplace(l, 0);
  std::vector<std::string> names;
  for (auto& [name, idx] : index) {
    idx = names.size();
    names.push_back(name);
  }
  CountMatrix counts(names.size(),
                     std::vector<long long>(static_cast<std::size_t>(partition.k()), 0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++counts[index.at(labels[i])][static_cast<std::size_t>(partition[i])];
  }
  return confusion_from_counts(std::move(counts), std::move(names));
}

PairwiseScore f_measure_from_counts(const CountMatrix& counts) {
  double together_both = 0.0;
  double together_label = 0.0;
  std::vector<long long> col_sums(counts.empty() ? 0 : counts.front().size(), 0);
  for (const auto& row : counts) {
    long long row_sum = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      together_both += choose2(row[j]);
      row_sum += row[j];
      col_sums[j] += row[j];
    }
    together_label += choose2(row_sum);
  }
  double together_cluster = 0.0;
  for (const long long c : col_sums) together_cluster += choose2(c);
  PairwiseScore s;
  s.precision = together_cluster > 0.0 ? together_both / together_cluster : 0.0;
  s.recall = together_label > 0.0 ? together_both / together_label : 0.0;
  s.f = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
                                     : 0.0;
  return s;
}

PairwiseScore f_measure(const Partition& partition, const std::vector<std::string>& labels) {
  return f_measure_from_counts(confusion(partition, labels).counts);
}

double macro_f1(const ConfusionTable& table) {
  if (table.labels.empty()) return 0.0;
  std::vector<long long> col_sums(table.clusters(), 0);
  for (const auto& row : table.counts) {
    for (std::size_t j = 0; j < row.size(); ++j) col_sums[j] += row[j];
  }
  double total = 0.0;
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    const int j = table.matching[i];
    if (j < 0) continue;
    long long row_sum = 0;
    for (const long long c : table.counts[i]) row_sum += c;
    const long long hit = table.counts[i][static_cast<std::size_t>(j)];
    const long long denom = row_sum + col_sums[static_cast<std::size_t>(j)];
    if (denom > 0) total += 2.0 * static_cast<double>(hit) / static_cast<double>(denom);
  }
  return total / static_cast<double>(table.labels.size());
}

DiagnosticsBundle similarity_diagnostics(const SimilarityGraph& graph,
                                         const std::vector<std::string>* labels) {
  const std::size_t n = graph.size();
  if (labels != nullptr && labels->size() != n) {
    throw Error("eval", "one label per document required");
  }
  DiagnosticsBundle b;
  b.quantile_count = n > 1 ? (5 * (n - 1) + 99) / 100 : 0;
  b.documents.resize(n);
  const std::size_t q = b.quantile_count;
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> others;
    for (std::size_t i = begin; i < end; ++i) {
      DocumentDiagnostics& d = b.documents[i];
      others.clear();
      double within = 0.0, outside = 0.0;
      std::size_t n_within = 0, n_outside = 0;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i) continue;
        const double s = graph.S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l));
        others.push_back(s);
        if (labels != nullptr) {
          if ((*labels)[l] == (*labels)[i]) {
            within += s;
            ++n_within;
          } else {
            outside += s;
            ++n_outside;
          }
        }
      }
      if (q > 0) {
        std::sort(others.begin(), others.end());
        double low = 0.0, high = 0.0;
        for (std::size_t r = 0; r < q; ++r) {
          low += others[r];
          high += others[others.size() - 1 - r];
        }
        d.bottom_mean = low / static_cast<double>(q);
        d.top_mean = high / static_cast<double>(q);
        d.top_minus_bottom = d.top_mean - d.bottom_mean;
      }
      if (n_within > 0) d.within_mean = within / static_cast<double>(n_within);
      if (n_outside > 0) d.outside_mean = outside / static_cast<double>(n_outside);
      if (d.within_mean && d.outside_mean) {
        d.within_minus_outside = *d.within_mean - *d.outside_mean;
      }
    }
  });
  for (const auto& d : b.documents) {
    b.top_sorted.push_back(d.top_mean);
    b.bottom_sorted.push_back(d.bottom_mean);
    b.top_minus_bottom_sorted.push_back(d.top_minus_bottom);
    if (d.within_mean) b.within_sorted.push_back(*d.within_mean);
    if (d.outside_mean) b.outside_sorted.push_back(*d.outside_mean);
    if (d.within_minus_outside) b.within_minus_outside_sorted.push_back(*d.within_minus_outside);
  }
  for (auto* col : {&b.top_sorted, &b.bottom_sorted, &b.top_minus_bottom_sorted, &b.within_sorted,
                    &b.outside_sorted, &b.within_minus_outside_sorted}) {
    std::sort(col->begin(), col->end());
  }
  return b;
}

void write_diagnostics_csv(std::ostream& out, const DiagnosticsBundle& bundle,
                           const std::vector<std::string>& doc_ids) {
  if (doc_ids.size() != bundle.documents.size()) {
    throw Error("eval", "one id per diagnostics row required");
  }
  out << "doc_id,top5_mean,bottom5_mean,top_minus_bottom,within_mean,outside_mean,"
         "within_minus_outside\n";
  for (std::size_t i = 0; i < doc_ids.size(); ++i) {
    const auto& d = bundle.documents[i];
    out << csv_quote(doc_ids[i]) << ',' << format_double(d.top_mean) << ',' << format_double(d.bottom_mean)
        << ',' << format_double(d.top_minus_bottom) << ',';
    write_optional(out, d.within_mean);
    out << ',';
    write_optional(out, d.outside_mean);
    out << ',';
    write_optional(out, d.within_minus_outside);
    out << '\n';
  }
}

void write_sorted_diagnostics_csv(std::ostream& out, const DiagnosticsBundle& bundle) {
  const std::vector<const std::vector<double>*> cols = {
      &bundle.top_sorted,    &bundle.bottom_sorted,  &bundle.top_minus_bottom_sorted,
      &bundle.within_sorted, &bundle.outside_sorted, &bundle.within_minus_outside_sorted};
  out << "position,top5_mean,bottom5_mean,top_minus_bottom,within_mean,outside_mean,"
         "within_minus_outside\n";
  for (std::size_t r = 0; r < bundle.documents.size(); ++r) {
    out << r + 1;
    for (const auto* col : cols) {
      out << ',';
      if (r < col->size()) out << format_double((*col)[r]);
    }
    out << '\n';
  }
}

void write_confusion_csv(std::ostream& out, const ConfusionTable& table) {
  out << "label";
  for (std::size_t j = 0; j < table.clusters(); ++j) out << ",cluster_" << j + 1;
  out << ",matched_cluster\n";
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    out << csv_quote(table.labels[i]);
    for (const long long c : table.counts[i]) out << ',' << c;
    out << ',';
    if (table.matching[i] >= 0) out << table.matching[i] + 1;
    out << '\n';
  }
}

}  // namespace xgsc
