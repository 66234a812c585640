#pragma once

#include "xgsc/corpus.hpp"
#include "xgsc/word_space.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xgsc {

enum class SpaceTag { glove, tvs, spectral_L, spectral_N, spectral_R, gower_K, gower_B };

std::string_view to_string(SpaceTag tag);

/// Unit document vector g(d) together with each word's linear coefficient
/// weight*(w, d) in it, so that g(d) = sum_w weight*(w, d) g(w).
struct DocEmbedding {
  std::string doc_id;
  Vector vector;
  std::map<std::string, double, std::less<>> weight_star;
};

struct WeightedWord {
  std::string word;
  double weight;
};

/// n x m document representation. `row_weights` is set only for weighted
/// constructions, where row i has been divided by row_weights[i].
struct EmbeddingMatrix {
  std::vector<std::string> doc_ids;
  Matrix rows;
  std::optional<Vector> row_weights;
  SpaceTag space = SpaceTag::glove;

  std::size_t size() const noexcept { return static_cast<std::size_t>(rows.rows()); }
  bool weighted() const noexcept { return row_weights.has_value(); }
};

/// Term vector space: word i of the sorted corpus vocabulary is the unit
/// vector e_i. Dimension is the vocabulary size.
class TermSpace final : public WordSpace {
 public:
  explicit TermSpace(const Corpus& corpus);

  std::size_t dim() const override { return index_.size(); }
  bool contains(std::string_view word) const override;
  void add_scaled(std::string_view word, double coeff, Vector& out) const override;
  double dot(std::string_view word, const Vector& v) const override;

  Eigen::Index coordinate(std::string_view word) const;

 private:
  std::map<std::string, Eigen::Index, std::less<>> index_;
};

/// Embeds a document from explicit per-word weights. Words absent from
/// `space` are ignored; summation runs in the given order.
DocEmbedding embed_weighted(const std::string& doc_id, std::span<const WeightedWord> words,
                            const WordSpace& space);

/// g(d) = alpha(g'(d)) * sum_w weight(w) g(w) / sum_w weight(w), with
/// out-of-vocabulary tokens dropped. Throws on all-OOV documents and on
/// zero-norm g'(d).
DocEmbedding embed_document(const Document& doc, const WordSpace& space, const Corpus& corpus,
                            WeightScheme scheme);

/// weight*(w, d) * g(w)^T g(d).
double word_doc_similarity(std::string_view word, const DocEmbedding& emb,
                           const WordSpace& space);

struct EmbeddedCorpus {
  EmbeddingMatrix matrix;
  std::vector<DocEmbedding> documents;
  std::vector<SkipRecord> skipped;
};

/// Embeds every document; unembeddable ones become skip records.
EmbeddedCorpus embed_corpus(const Corpus& corpus, const WordSpace& space, WeightScheme scheme,
                            SpaceTag tag = SpaceTag::glove);

/// Term vector space baseline; rows are unit-normalized weight vectors.
EmbeddedCorpus embed_corpus_tvs(const Corpus& corpus, WeightScheme scheme);

/// Divides row i by omega[i] and records omega as the row weights.
EmbeddingMatrix apply_row_weights(const EmbeddingMatrix& emb, const Vector& omega);

/// CSV with header "doc_id,v1,...,vm" and round-trip precision values.
void write_embedding_csv(std::ostream& out, const EmbeddingMatrix& emb);
void write_skip_records_json(std::ostream& out, const std::vector<SkipRecord>& skipped);

}  // namespace xgsc
