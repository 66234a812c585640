#pragma once

#include "xgsc/docembed.hpp"
#include "xgsc/partition.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xgsc {

enum class ImpactMode { cardinality, volume };

std::string_view to_string(ImpactMode mode);
ImpactMode parse_impact_mode(std::string_view name);

using WordScores = std::map<std::string, double, std::less<>>;

struct WordExplanation {
  std::string word;
  double score = 0.0;
  int rank = 0;
};

struct ClusterProfile {
  int cluster_id = 0;
  std::size_t size = 0;
  /// |C| in cardinality mode, V'_j in volume mode.
  double normalizer = 1.0;
  Vector center;
  WordScores impact;
  std::vector<WordExplanation> top_words;
  std::vector<WordExplanation> diff_words;
};

/// |C| or the supplied volume; volume mode without a volume throws.
double impact_normalizer(ImpactMode mode, std::size_t cluster_size,
                         std::optional<double> volume);

/// mu(C) = sum_{d in C} g(d) / normalizer.
Vector cluster_center(const std::vector<DocEmbedding>& docs,
                      const std::vector<std::size_t>& members, double normalizer);

/// impact(w; C) = sum_{d in C, w in d} weight*(w, d) / normalizer.
WordScores cluster_word_impact(const std::vector<DocEmbedding>& docs,
                               const std::vector<std::size_t>& members, ImpactMode mode,
                               std::optional<double> volume = std::nullopt);

/// Ranks scores descending, ties lexicographic, keeping the first n (all if
/// n exceeds the word count).
std::vector<WordExplanation> rank_scores(const WordScores& scores, std::size_t n);

/// sim(w, C) = impact(w; C) g(w)^T mu(C) for every word of the cluster.
WordScores word_cluster_similarity(const ClusterProfile& profile, const WordSpace& space);

std::vector<WordExplanation> top_words_by_similarity(const ClusterProfile& profile,
                                                     const WordSpace& space,
                                                     std::size_t n = 50);

/// weight*(w, d) g(w)^T mu(C) per word of d, sorted descending.
std::vector<WordExplanation> membership_contributions(const DocEmbedding& doc,
                                                      const Vector& center,
                                                      const WordSpace& space);

/// 2k impact(w; C) g(w)^T (mu(C) - mean of all k centers) for words of the
/// target cluster. Throws for k = 1.
WordScores differentiating_scores(const std::vector<ClusterProfile>& profiles,
                                  std::size_t target, const WordSpace& space);

std::vector<WordExplanation> differentiating_words(const std::vector<ClusterProfile>& profiles,
                                                   std::size_t target, const WordSpace& space,
                                                   std::size_t n = 50);

/// sum over other clusters of ||mu(C) - mu(C')||^2.
double cluster_distinctness(const std::vector<ClusterProfile>& profiles, std::size_t target);

/// Same quantity via sum ||mu(C')||^2 + |others| ||mu(C)||^2 - 2 mu(C)^T sum mu(C').
double cluster_distinctness_expanded(const std::vector<ClusterProfile>& profiles,
                                     std::size_t target);

struct ExplainOptions {
  ImpactMode mode = ImpactMode::cardinality;
  /// Required in volume mode: V'_j per cluster.
  std::optional<Vector> volumes;
  std::size_t top_n = 50;
};

/// Builds profiles (center, impact, top and differentiating words) for every
/// cluster. `docs` are the space's document embeddings in partition order.
std::vector<ClusterProfile> explain_clusters(const std::vector<DocEmbedding>& docs,
                                             const Partition& partition, const WordSpace& space,
                                             const ExplainOptions& options);

/// "[1] "w1", "w2", ..., [10] "w10", ..." with a marker at rank 1 and every
/// tenth rank.
std::string format_word_list(const std::vector<WordExplanation>& words);

void write_explanation_text(std::ostream& out, const std::vector<ClusterProfile>& profiles);

}  // namespace xgsc
