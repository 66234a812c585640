#include "xgsc/docembed.hpp"

#include "xgsc/parallel.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>
#include <variant>

namespace xgsc {

std::string_view to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::glove: return "glove";
    case SpaceTag::tvs: return "tvs";
    case SpaceTag::spectral_L: return "spectral_L";
    case SpaceTag::spectral_N: return "spectral_N";
    case SpaceTag::spectral_R: return "spectral_R";
    case SpaceTag::gower_K: return "gower_K";
    case SpaceTag::gower_B: return "gower_B";
  }
  return "unknown";
}

TermSpace::TermSpace(const Corpus& corpus) {
  Eigen::Index next = 0;
  for (const auto& word : corpus.vocabulary()) index_.emplace(word, next++);
}

bool TermSpace::contains(std::string_view word) const { return index_.contains(word); }

Eigen::Index TermSpace::coordinate(std::string_view word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) {
    throw Error("docembed", "word '" + std::string(word) + "' not in term space");
  }
  return it->second;
}

void TermSpace::add_scaled(std::string_view word, double coeff, Vector& out) const {
  out[coordinate(word)] += coeff;
}

double TermSpace::dot(std::string_view word, const Vector& v) const {
  return v[coordinate(word)];
}

DocEmbedding embed_weighted(const std::string& doc_id, std::span<const WeightedWord> words,
                            const WordSpace& space) {
  std::vector<const WeightedWord*> usable;
  usable.reserve(words.size());
  for (const auto& w : words) {
    if (space.contains(w.word)) usable.push_back(&w);
  }
  if (usable.empty()) {
    throw Error("docembed", "unembeddable document '" + doc_id + "': no in-vocabulary words");
  }

  double total = 0.0;
  for (const auto* w : usable) {
    if (!(w->weight > 0.0)) {
      throw Error("docembed", "nonpositive weight for '" + w->word + "' in '" + doc_id + "'");
    }
    total += w->weight;
  }

  const auto dim = static_cast<Eigen::Index>(space.dim());
  Vector mean = Vector::Zero(dim);
  for (const auto* w : usable) space.add_scaled(w->word, w->weight / total, mean);
  const double norm = mean.norm();
  if (!(norm > 1e-12)) {
    throw Error("docembed", "zero-norm document vector for '" + doc_id + "'");
  }
  const double alpha = 1.0 / norm;

  DocEmbedding emb;
  emb.doc_id = doc_id;
  emb.vector = Vector::Zero(dim);
  for (const auto* w : usable) {
    const double ws = alpha * w->weight / total;
    emb.weight_star[w->word] += ws;
    space.add_scaled(w->word, ws, emb.vector);
  }
  return emb;
}

DocEmbedding embed_document(const Document& doc, const WordSpace& space, const Corpus& corpus,
                            WeightScheme scheme) {
  std::vector<WeightedWord> words;
  for (const auto& [word, w] : distinct_word_weights(doc, corpus, scheme)) {
    words.push_back({word, w});
  }
  return embed_weighted(doc.id, words, space);
}

double word_doc_similarity(std::string_view word, const DocEmbedding& emb,
                           const WordSpace& space) {
  const auto it = emb.weight_star.find(word);
  if (it == emb.weight_star.end()) {
    throw Error("docembed", "word '" + std::string(word) + "' not in document '" +
                                emb.doc_id + "'");
  }
  return it->second * space.dot(word, emb.vector);
}

EmbeddedCorpus embed_corpus(const Corpus& corpus, const WordSpace& space, WeightScheme scheme,
                            SpaceTag tag) {
  const std::size_t n = corpus.size();
  std::vector<std::variant<DocEmbedding, SkipRecord>> results(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& doc = corpus.document(i);
      try {
        results[i] = embed_document(doc, space, corpus, scheme);
      } catch (const Error& e) {
        results[i] = SkipRecord{doc.id, e.what()};
      }
    }
  });

  EmbeddedCorpus out;
  out.matrix.space = tag;
  for (auto& r : results) {
    if (auto* emb = std::get_if<DocEmbedding>(&r)) {
      out.documents.push_back(std::move(*emb));
    } else {
      out.skipped.push_back(std::get<SkipRecord>(r));
    }
  }
  out.matrix.rows.resize(static_cast<Eigen::Index>(out.documents.size()),
                         static_cast<Eigen::Index>(space.dim()));
  for (std::size_t i = 0; i < out.documents.size(); ++i) {
    out.matrix.doc_ids.push_back(out.documents[i].doc_id);
    out.matrix.rows.row(static_cast<Eigen::Index>(i)) = out.documents[i].vector.transpose();
  }
  return out;
}

EmbeddedCorpus embed_corpus_tvs(const Corpus& corpus, WeightScheme scheme) {
  if (corpus.size() == 0) throw Error("docembed", "empty corpus");
  const TermSpace space(corpus);
  return embed_corpus(corpus, space, scheme, SpaceTag::tvs);
}

EmbeddingMatrix apply_row_weights(const EmbeddingMatrix& emb, const Vector& omega) {
  if (static_cast<std::size_t>(omega.size()) != emb.size()) {
    throw Error("docembed", "row weight count does not match embedding rows");
  }
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    if (!(omega[i] > 0.0)) {
      throw Error("docembed", "nonpositive row weight " + std::to_string(omega[i]) +
                                  " for document '" + emb.doc_ids[static_cast<std::size_t>(i)] +
                                  "'; consider shifting similarities to be nonnegative");
    }
  }
  EmbeddingMatrix out = emb;
  out.rows = omega.cwiseInverse().asDiagonal() * emb.rows;
  out.row_weights = omega;
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

void write_embedding_csv(std::ostream& out, const EmbeddingMatrix& emb) {
  out << "doc_id";
  for (Eigen::Index c = 0; c < emb.rows.cols(); ++c) out << ",v" << (c + 1);
  out << '\n';
  char buffer[64];
  for (Eigen::Index i = 0; i < emb.rows.rows(); ++i) {
    out << csv_field(emb.doc_ids[static_cast<std::size_t>(i)]);
    for (Eigen::Index c = 0; c < emb.rows.cols(); ++c) {
      const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), emb.rows(i, c));
      out << ',' << std::string_view(buffer, static_cast<std::size_t>(ptr - buffer));
    }
    out << '\n';
  }
}

void write_skip_records_json(std::ostream& out, const std::vector<SkipRecord>& skipped) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : skipped) arr.push_back({{"doc_id", s.doc_id}, {"reason", s.reason}});
  out << arr.dump(2) << '\n';
}

}  // namespace xgsc
