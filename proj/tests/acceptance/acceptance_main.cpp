#include "xgsc/equivalence.hpp"
#include "xgsc/eval.hpp"
#include "xgsc/explain.hpp"
#include "xgsc/gower.hpp"
#include "xgsc/kmeans.hpp"
#include "xgsc/objectives.hpp"
#include "xgsc/parallel.hpp"
#include "xgsc/pipeline.hpp"
#include "xgsc/spectral.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace xgsc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Largest residual seen against a tolerance.
struct Tracker {
  double tol;
  double worst = 0.0;
  std::size_t count = 0;

  void add(double r) {
    worst = std::max(worst, std::isfinite(r) ? r : std::numeric_limits<double>::infinity());
    ++count;
  }
  bool ok() const { return worst <= tol; }
  std::string text() const {
    std::ostringstream s;
    s << count << " checks, max residual " << worst << " (tol " << tol << ")";
    return s.str();
  }
};

struct Case {
  SimilarityGraph graph;
  std::vector<Partition> partitions;
};

/// Five random cosine graphs on 30 documents with 40 partitions each,
/// k cycling through 2, 3 and 5.
const std::vector<Case>& shared_cases() {
  static const std::vector<Case> cases = [] {
    std::vector<Case> out;
    std::mt19937_64 rng(2024);
    const int ks[] = {2, 3, 5};
    for (int g = 0; g < 5; ++g) {
      Case c{test::random_graph(30, rng, g != 4, 10), {}};
      for (int t = 0; t < 40; ++t) c.partitions.push_back(random_partition(30, ks[t % 3], rng));
      out.push_back(std::move(c));
    }
    return out;
  }();
  return cases;
}

double max_distance_gap(const Matrix& Z, const Matrix& A, double offset) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    for (Eigen::Index l = 0; l < Z.rows(); ++l) {
      if (i != l) {
        worst = std::max(worst, std::abs((Z.row(i) - Z.row(l)).squaredNorm() - A(i, l) - offset));
      }
    }
  }
  return worst;
}

Outcome a1() {
  Tracker t{1e-10};
  for (const auto& c : shared_cases()) {
    for (const auto& p : c.partitions) t.add(relative_residual(q_glove(c.graph, p), 2.0 * q_kbased(c.graph, p)));
  }
  return {t.ok() && t.count == 200, t.text()};
}

Outcome a2() {
  Tracker t{1e-10};
  Tracker spread{1e-10};
  for (const auto& c : shared_cases()) {
    std::map<int, std::pair<double, double>> range;
    for (const auto& p : c.partitions) {
      if ((c.graph.degree_prime.array() <= 0.0).any()) break;
      const double lhs = q_bbased(c.graph, p) - nrcut(c.graph, p);
      const double F = volumes(c.graph, p).inverse_degree_prime_total;
      t.add(relative_residual(lhs, F - p.k()));
      auto [it, fresh] = range.try_emplace(p.k(), lhs, lhs);
      it->second.first = std::min(it->second.first, lhs);
      it->second.second = std::max(it->second.second, lhs);
    }
    for (const auto& [k, r] : range) spread.add(relative_residual(r.first, r.second));
  }
  return {t.ok() && spread.ok() && t.count > 0,
          t.text() + "; constant spread " + spread.text()};
}

Outcome a3() {
  Tracker t{1e-10};
  for (const auto& c : shared_cases()) {
    if ((c.graph.degree_prime.array() <= 0.0).any()) continue;
    for (const auto& p : c.partitions) t.add(relative_residual(q_wglove(c.graph, p), q_bbased(c.graph, p)));
  }
  return {t.ok() && t.count > 0, t.text()};
}

Outcome a4() {
  Tracker t{1e-9};
  for (const auto& c : shared_cases()) {
    const double n = static_cast<double>(c.graph.size());
    for (const auto& p : c.partitions) {
      const Volumes v = volumes(c.graph, p);
      double rhs = -(n - p.k());
      for (int j = 0; j < p.k(); ++j) rhs += v.volume[j] / static_cast<double>(p.cluster_size(j));
      t.add(relative_residual(rcut(c.graph, p) - 2.0 * q_kbased(c.graph, p), rhs));
    }
  }
  Tracker constant{1e-9};
  std::mt19937_64 rng(6);
  for (int g = 0; g < 3; ++g) {
    const SimilarityGraph graph = test::random_graph(6, rng);
    std::optional<double> first;
    for (const auto& p : test::all_partitions(6, 2)) {
      if (p.cluster_size(0) != 3) continue;
      const double diff = rcut(graph, p) - 2.0 * q_kbased(graph, p);
      if (!first) first = diff;
      constant.add(relative_residual(diff, *first));
    }
  }
  return {t.ok() && constant.ok(), t.text() + "; equal-size n=6 " + constant.text()};
}

Outcome a5() {
  Tracker t{1e-8};
  std::vector<SimilarityGraph> graphs{test::fixture_graph()};
  std::mt19937_64 rng(55);
  for (int g = 0; g < 4; ++g) graphs.push_back(test::random_graph(20, rng, true, 8));
  for (const auto& graph : graphs) {
    const GowerEmbedding k = gower_embed(graph, GowerKind::K);
    t.add(max_distance_gap(k.Z, k_pseudodistance(graph), 2.0 * k.lingoes_sigma));
    const GowerEmbedding b = gower_embed(graph, GowerKind::B);
    t.add(max_distance_gap(b.Z, b_pseudodistance(graph), 2.0 * b.lingoes_sigma));
  }
  // Dissimilarities violating the triangle inequality need the correction.
  Matrix A(4, 4);
  A << 0, 9, 1, 1, 9, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0;
  const GowerEmbedding corrected = gower_embed_distances(A, GowerKind::K);
  t.add(max_distance_gap(corrected.Z, A, 2.0 * corrected.lingoes_sigma));
  const SimilarityGraph raw = test::random_similarity_matrix(15, rng, 0.0, 1.0);
  const GowerEmbedding raw_k = gower_embed(raw, GowerKind::K);
  t.add(max_distance_gap(raw_k.Z, k_pseudodistance(raw), 2.0 * raw_k.lingoes_sigma));
  const bool lingoes_used = corrected.lingoes_sigma > 0.0 && raw_k.lingoes_sigma > 0.0;
  std::ostringstream s;
  s << t.text() << "; Lingoes sigma " << corrected.lingoes_sigma << ", " << raw_k.lingoes_sigma;
  return {t.ok() && lingoes_used, s.str()};
}

Outcome a6() {
  std::mt19937_64 rng(66);
  std::normal_distribution<double> normal(0.0, 1.0);
  const char* names[] = {"river", "bank",  "money", "loan",   "water", "fish",  "boat",
                         "stock", "trade", "price", "market", "shore", "flood", "rain",
                         "credit", "fund", "lake", "swim",   "tax",   "wave"};
  WordVectorTable table(8, "toy");
  std::vector<double> v(8);
  for (const char* w : names) {
    for (auto& x : v) x = normal(rng);
    table.insert(w, v);
  }
  std::uniform_int_distribution<int> length(3, 12);
  std::uniform_int_distribution<int> pick(0, 19);
  std::vector<RawDocument> raw;
  for (int d = 0; d < 50; ++d) {
    std::string text;
    const int len = length(rng);
    for (int t = 0; t < len; ++t) text += std::string(names[pick(rng)]) + " ";
    raw.push_back({"doc" + std::to_string(d), text, std::nullopt});
  }
  const CorpusBuild build = build_corpus(raw);
  const EmbeddedCorpus emb = embed_corpus(build.corpus, table, WeightScheme::tfidf);
  Tracker doc{1e-6};
  for (const auto& d : emb.documents) {
    double sum = 0.0;
    for (const auto& [w, ws] : d.weight_star) sum += word_doc_similarity(w, d, table);
    doc.add(std::abs(sum - 1.0));
  }
  const ClusteringResult result = kmeans(emb.matrix, {.k = 4, .seed = 1});
  const auto profiles = explain_clusters(emb.documents, result.partition, table, {});
  Tracker cluster{1e-6};
  for (const auto& p : profiles) {
    double sum = 0.0;
    for (const auto& [w, s] : word_cluster_similarity(p, table)) sum += s;
    cluster.add(std::abs(sum - p.center.squaredNorm()));
  }
  return {doc.ok() && cluster.ok() && doc.count == 50 && cluster.count == 4,
          "documents: " + doc.text() + "; clusters: " + cluster.text()};
}

Outcome a7() {
  Tracker t{1e-6};
  std::vector<SimilarityGraph> graphs;
  for (const auto& c : shared_cases()) graphs.push_back(c.graph);
  std::mt19937_64 rng(77);
  graphs.push_back(test::random_similarity_matrix(25, rng, 0.0, 1.0));
  bool lingoes = false;
  for (const auto& graph : graphs) {
    const double n = static_cast<double>(graph.size());
    const GowerEmbedding k = gower_embed(graph, GowerKind::K);
    const bool b_defined = (graph.degree_prime.array() > 0.0).all();
    std::optional<GowerEmbedding> b;
    if (b_defined) b = gower_embed(graph, GowerKind::B);
    lingoes = lingoes || k.lingoes_sigma > 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      const Partition p = random_partition(graph.size(), 2 + trial % 4, rng);
      const double geometric = kmeans_objective(k.Z, p);
      t.add(relative_residual(geometric, q_kbased(graph, p) + k.lingoes_sigma * (n - p.k())));
      if (!b) continue;
      const Vector& w = graph.degree_prime;
      const Volumes vol = volumes(graph, p);
      double offset = 0.0;
      for (int j = 0; j < p.k(); ++j) {
        double sq = 0.0;
        for (const std::size_t i : p.members(j)) sq += w[static_cast<Eigen::Index>(i)] * w[static_cast<Eigen::Index>(i)];
        offset += (vol.volume_prime[j] * vol.volume_prime[j] - sq) / vol.volume_prime[j];
      }
      t.add(relative_residual(kmeans_objective(b->Z, p, &w),
                              q_bbased(graph, p) + b->lingoes_sigma * offset));
    }
  }
  return {t.ok() && lingoes, t.text()};
}

std::vector<std::size_t> argmin_set(const std::vector<double>& values) {
  const double best = *std::min_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] - best <= 1e-12 * std::max(1.0, std::abs(best))) out.push_back(i);
  }
  return out;
}

Outcome a8() {
  std::mt19937_64 rng(88);
  std::vector<SimilarityGraph> graphs;
  for (int g = 0; g < 5; ++g) graphs.push_back(test::random_graph(8, rng, g % 2 == 0));
  // Four identical pairs of documents: many tied optima.
  Matrix S = Matrix::Zero(8, 8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index l = 0; l < 8; ++l) {
      if (i != l) S(i, l) = i / 2 == l / 2 ? 1.0 : 0.25;
    }
  }
  graphs.push_back(graph_from_matrix(S));
  const auto parts = test::all_partitions(8, 2);
  bool same = parts.size() == 127;
  std::size_t largest_tie = 0;
  for (const auto& graph : graphs) {
    std::vector<double> glove;
    std::vector<double> kbased;
    for (const auto& p : parts) {
      glove.push_back(q_glove(graph, p));
      kbased.push_back(q_kbased(graph, p));
    }
    const auto a = argmin_set(glove);
    same = same && a == argmin_set(kbased);
    largest_tie = std::max(largest_tie, a.size());
  }
  return {same, std::to_string(graphs.size()) + " graphs x " + std::to_string(parts.size()) +
                    " partitions, largest tie set " + std::to_string(largest_tie)};
}

Outcome a9() {
  Tracker zero{1e-8};
  Tracker residual{1e-8};
  Tracker two_ways{1e-10};
  std::mt19937_64 rng(99);
  for (int g = 0; g < 5; ++g) {
    const SimilarityGraph graph = test::random_graph(25, rng);
    const Laplacian L = build_laplacian(graph, LaplacianKind::combinatorial);
    const EigenPairs low = eigendecompose_symmetric(L.M, 1);
    zero.add(std::abs(low.values[0]));
    const Vector u = low.vectors.col(0);
    zero.add((u - Vector::Constant(25, 1.0 / 5.0)).cwiseAbs().maxCoeff());
    for (const auto kind : {LaplacianKind::combinatorial, LaplacianKind::normalized,
                            LaplacianKind::rationormalized}) {
      const Laplacian lap = build_laplacian(graph, kind);
      const SpectralEmbedding se = spectral_embed(lap, 3);
      const double norm = Eigen::SelfAdjointEigenSolver<Matrix>(lap.M).eigenvalues().cwiseAbs().maxCoeff();
      for (Eigen::Index c = 0; c < se.X.cols(); ++c) {
        const Vector v = se.X.col(c);
        residual.add((lap.M * v - se.eigenvalues[c + 1] * v).norm() / std::max(1.0, norm));
      }
    }
    const Laplacian R = build_laplacian(graph, LaplacianKind::rationormalized);
    const Vector s = graph.degree_prime.array().rsqrt();
    two_ways.add((R.M - s.asDiagonal() * L.M * s.asDiagonal()).cwiseAbs().maxCoeff());
    two_ways.add((R.M - rationormalized_direct(graph)).cwiseAbs().maxCoeff());
  }
  Matrix S = Matrix::Zero(6, 6);
  for (Eigen::Index i = 0; i < 6; ++i) {
    for (Eigen::Index l = 0; l < 6; ++l) {
      if (i != l && i / 3 == l / 3) S(i, l) = 0.5 + 0.1 * static_cast<double>(i + l);
    }
  }
  const SimilarityGraph blocks = graph_from_matrix(S);
  bool separated = true;
  for (const auto kind : {LaplacianKind::combinatorial, LaplacianKind::normalized,
                          LaplacianKind::rationormalized}) {
    const Vector v = spectral_embed(build_laplacian(blocks, kind), 1).X.col(0);
    for (Eigen::Index i = 0; i < 6; ++i) {
      const bool first_block = i < 3;
      separated = separated && (v[i] * v[0] > 0.0) == first_block && std::abs(v[i]) > 1e-8;
    }
  }
  return {zero.ok() && residual.ok() && two_ways.ok() && separated,
          "lambda1/constant " + zero.text() + "; eigen residual " + residual.text() +
              "; two ways " + two_ways.text() + "; block sign separation " +
              (separated ? "yes" : "no")};
}

Outcome a10() {
  const ConfusionTable t = confusion_from_counts({{707, 9, 16}, {142, 259, 38}, {176, 4, 651}},
                                                 {"class1", "class2", "class3"});
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f%%", t.error_pct);
  const std::string printed = buffer;
  return {t.n == 2002 && t.correct == 1617 && printed == "19.2%",
          "n " + std::to_string(t.n) + ", correct " + std::to_string(t.correct) + ", errors: " +
              printed};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[e.path().filename().string()] = s.str();
  }
  return out;
}

Outcome a11() {
  const test::TempDir tmp("acceptance");
  for (const char* name : {"six_docs.jsonl", "toy_vectors.txt", "gower_k.json"}) {
    fs::copy_file(test::data_dir() / name, tmp.path() / name);
  }
  set_strict_sequential(true);
  const PipelineConfig cfg = load_pipeline_config(tmp.path() / "gower_k.json");
  const RunSummary first = run_pipeline(cfg);
  const auto before = snapshot(cfg.output_dir);
  fs::remove_all(cfg.output_dir);
  const RunSummary second = run_pipeline(cfg);
  const auto after = snapshot(cfg.output_dir);
  set_strict_sequential(false);
  const bool ok = first.exit_code == 0 && second.exit_code == 0 && before == after &&
                  before.size() >= 10;
  return {ok, std::to_string(before.size()) + " report files compared byte for byte"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1 q_glove = 2 q_kbased", a1},
      {"A2 q_bbased - NRCut = F - k", a2},
      {"A3 q_wglove = q_bbased", a3},
      {"A4 RCut - 2 q_kbased = -(n-k) + sum V_j/|C_j|", a4},
      {"A5 Gower distance identities", a5},
      {"A6 explanation conservation", a6},
      {"A7 geometric and closed-form objectives agree", a7},
      {"A8 identical argmin sets at n=8", a8},
      {"A9 spectral sanity", a9},
      {"A10 confusion arithmetic on the printed K-based table", a10},
      {"A11 strict-sequential determinism", a11},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail << '\n';
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failing") << '\n';
  return failures == 0 ? 0 : 1;
}
