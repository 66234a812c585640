#include "xgsc/explain.hpp"

#include "xgsc/parallel.hpp"

#include <algorithm>
#include <ostream>

namespace xgsc {

std::string_view to_string(ImpactMode mode) {
  return mode == ImpactMode::cardinality ? "cardinality" : "volume";
}

ImpactMode parse_impact_mode(std::string_view name) {
  if (name == "cardinality") return ImpactMode::cardinality;
  if (name == "volume") return ImpactMode::volume;
  throw Error("explain", "unknown impact mode '" + std::string(name) + "'");
}

double impact_normalizer(ImpactMode mode, std::size_t cluster_size,
                         std::optional<double> volume) {
  if (cluster_size == 0) throw Error("explain", "empty cluster");
  if (mode == ImpactMode::cardinality) return static_cast<double>(cluster_size);
  if (!volume) throw Error("explain", "volume mode requires cluster volumes");
  if (!(*volume > 0.0)) throw Error("explain", "cluster volume must be positive");
  return *volume;
}

Vector cluster_center(const std::vector<DocEmbedding>& docs,
                      const std::vector<std::size_t>& members, double normalizer) {
  if (members.empty()) throw Error("explain", "empty cluster");
  Vector center = Vector::Zero(docs[members.front()].vector.size());
  for (const std::size_t i : members) center += docs[i].vector;
  return center / normalizer;
}

WordScores cluster_word_impact(const std::vector<DocEmbedding>& docs,
                               const std::vector<std::size_t>& members, ImpactMode mode,
                               std::optional<double> volume) {
  const double normalizer = impact_normalizer(mode, members.size(), volume);
  WordScores impact;
  for (const std::size_t i : members) {
    for (const auto& [word, ws] : docs[i].weight_star) impact[word] += ws;
  }
  for (auto& entry : impact) entry.second /= normalizer;
  return impact;
}

std::vector<WordExplanation> rank_scores(const WordScores& scores, std::size_t n) {
  std::vector<WordExplanation> out;
  out.reserve(scores.size());
  for (const auto& [word, score] : scores) out.push_back({word, score, 0});
  std::stable_sort(out.begin(), out.end(), [](const WordExplanation& a, const WordExplanation& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
  if (out.size() > n) out.resize(n);
  for (std::size_t r = 0; r < out.size(); ++r) out[r].rank = static_cast<int>(r + 1);
  return out;
}

WordScores word_cluster_similarity(const ClusterProfile& profile, const WordSpace& space) {
  WordScores sims;
  for (const auto& [word, impact] : profile.impact) {
    sims.emplace(word, impact * space.dot(word, profile.center));
  }
  return sims;
}

std::vector<WordExplanation> top_words_by_similarity(const ClusterProfile& profile,
                                                     const WordSpace& space, std::size_t n) {
  return rank_scores(word_cluster_similarity(profile, space), n);
}

std::vector<WordExplanation> membership_contributions(const DocEmbedding& doc,
                                                      const Vector& center,
                                                      const WordSpace& space) {
  WordScores contributions;
  for (const auto& [word, ws] : doc.weight_star) {
    contributions.emplace(word, ws * space.dot(word, center));
  }
  return rank_scores(contributions, contributions.size());
}

WordScores differentiating_scores(const std::vector<ClusterProfile>& profiles,
                                  std::size_t target, const WordSpace& space) {
  if (profiles.size() < 2) throw Error("explain", "no contrast clusters");
  if (target >= profiles.size()) throw Error("explain", "cluster index out of range");
  Vector mean = Vector::Zero(profiles[target].center.size());
  for (const auto& p : profiles) mean += p.center;
  mean /= static_cast<double>(profiles.size());
  const Vector contrast = profiles[target].center - mean;
  const double factor = 2.0 * static_cast<double>(profiles.size());
  WordScores scores;
  for (const auto& [word, impact] : profiles[target].impact) {
    scores.emplace(word, factor * impact * space.dot(word, contrast));
  }
  return scores;
}

std::vector<WordExplanation> differentiating_words(const std::vector<ClusterProfile>& profiles,
                                                   std::size_t target, const WordSpace& space,
                                                   std::size_t n) {
  return rank_scores(differentiating_scores(profiles, target, space), n);
}

double cluster_distinctness(const std::vector<ClusterProfile>& profiles, std::size_t target) {
  if (profiles.size() < 2) throw Error("explain", "no contrast clusters");
  double total = 0.0;
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    if (j != target) total += (profiles[target].center - profiles[j].center).squaredNorm();
  }
  return total;
}

double cluster_distinctness_expanded(const std::vector<ClusterProfile>& profiles,
                                     std::size_t target) {
  if (profiles.size() < 2) throw Error("explain", "no contrast clusters");
  const Vector& mu = profiles[target].center;
  Vector others = Vector::Zero(mu.size());
  double others_sq = 0.0;
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    if (j == target) continue;
    others += profiles[j].center;
    others_sq += profiles[j].center.squaredNorm();
  }
  return others_sq + static_cast<double>(profiles.size() - 1) * mu.squaredNorm() -
         2.0 * mu.dot(others);
}

std::vector<ClusterProfile> explain_clusters(const std::vector<DocEmbedding>& docs,
                                             const Partition& partition, const WordSpace& space,
                                             const ExplainOptions& options) {
  if (docs.size() != partition.size()) {
    throw Error("explain", "document count does not match the partition");
  }
  const auto k = static_cast<std::size_t>(partition.k());
  if (options.mode == ImpactMode::volume &&
      (!options.volumes || static_cast<std::size_t>(options.volumes->size()) != k)) {
    throw Error("explain", "volume mode requires one volume per cluster");
  }
  std::vector<ClusterProfile> profiles(k);
  parallel_for(k, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const int cj = static_cast<int>(j);
      const auto& members = partition.members(cj);
      std::optional<double> volume;
      if (options.volumes) volume = (*options.volumes)[static_cast<Eigen::Index>(j)];
      ClusterProfile& p = profiles[j];
      p.cluster_id = cj;
      p.size = members.size();
      p.normalizer = impact_normalizer(options.mode, members.size(), volume);
      p.center = cluster_center(docs, members, p.normalizer);
      p.impact = cluster_word_impact(docs, members, options.mode, volume);
      p.top_words = top_words_by_similarity(p, space, options.top_n);
    }
  });
  if (k >= 2) {
    parallel_for(k, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        profiles[j].diff_words = differentiating_words(profiles, j, space, options.top_n);
      }
    });
  }
  return profiles;
}

std::string format_word_list(const std::vector<WordExplanation>& words) {
  std::string out;
  for (std::size_t r = 0; r < words.size(); ++r) {
    const std::size_t rank = r + 1;
    if (r > 0) out += ", ";
    if (rank == 1 || rank % 10 == 0) out += "[" + std::to_string(rank) + "] ";
    out += "\"" + words[r].word + "\"";
  }
  return out;
}

void write_explanation_text(std::ostream& out, const std::vector<ClusterProfile>& profiles) {
  for (const auto& p : profiles) {
    out << "Cluster " << p.cluster_id + 1 << " (" << p.size << " documents)\n";
    out << "  Top " << p.top_words.size() << " explaining words\n";
    out << "  " << format_word_list(p.top_words) << "\n";
    if (!p.diff_words.empty()) {
      out << "  Top " << p.diff_words.size() << " differentiating words\n";
      out << "  " << format_word_list(p.diff_words) << "\n";
    }
    out << "\n";
  }
}

}  // namespace xgsc
