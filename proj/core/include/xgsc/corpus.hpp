#pragma once

#include "xgsc/common.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace xgsc {

struct TokenizerConfig {
  /// Drop whitespace-delimited chunks that look like URLs.
  bool drop_urls = true;
};

/// Lowercases ASCII letters and splits on every byte that is not an ASCII
/// letter or digit. Bytes >= 0x80 are kept as word characters so UTF-8 words
/// survive intact. Hashtag and mention markers vanish as separators.
std::vector<std::string> tokenize(std::string_view raw_text,
                                  const TokenizerConfig& rules = {});

struct RawDocument {
  std::string id;
  std::string text;
  std::optional<std::string> label;
};

struct Document {
  std::string id;
  std::vector<std::string> tokens;
  std::optional<std::string> label;
};

enum class WeightScheme { uniform, tf, idf, tfidf };

WeightScheme parse_weight_scheme(std::string_view name);
std::string_view to_string(WeightScheme scheme);

struct CorpusBuild;

/// Immutable tokenized document collection with document frequencies.
class Corpus {
 public:
  using WordSet = std::set<std::string, std::less<>>;

  /// Builds statistics over `documents`. Documents without tokens are moved
  /// to the rejection list instead of entering the corpus. Duplicate ids
  /// throw.
  static CorpusBuild from_documents(std::vector<Document> documents,
                                    double idf_log_base = std::numbers::e);

  std::size_t size() const noexcept { return documents_.size(); }
  const std::vector<Document>& documents() const noexcept { return documents_; }
  const Document& document(std::size_t i) const { return documents_.at(i); }
  const WordSet& vocabulary() const noexcept { return vocabulary_; }
  std::size_t document_frequency(std::string_view word) const;
  double idf_log_base() const noexcept { return log_base_; }

  /// Keeps only tokens for which keep(word) holds; documents left empty are
  /// rejected. Statistics are recomputed on the surviving tokens.
  template <typename Pred>
  CorpusBuild filter_tokens(Pred keep, const std::string& reason) const;

 private:
  std::vector<Document> documents_;
  WordSet vocabulary_;
  std::map<std::string, std::size_t, std::less<>> df_;
  double log_base_ = std::numbers::e;
};

struct CorpusBuild {
  Corpus corpus;
  std::vector<SkipRecord> rejected;
};

CorpusBuild build_corpus(const std::vector<RawDocument>& raw,
                         const TokenizerConfig& rules = {},
                         double idf_log_base = std::numbers::e);

/// One JSON object per line: {"id": string, "text": string, "label": string|null}.
std::vector<RawDocument> read_jsonl(std::istream& in);
/// One document per line; ids are 1-based line numbers, no labels.
std::vector<RawDocument> read_plain_text(std::istream& in);

enum class CorpusFormat { jsonl, plain_text };
std::vector<RawDocument> load_raw_documents(const std::filesystem::path& path,
                                            CorpusFormat format);

std::size_t term_frequency(std::string_view word, const Document& doc);

/// |D| / (log(df) + 1) for words present in the corpus, 0 otherwise.
double inverse_document_frequency(std::string_view word, const Corpus& corpus);

/// Weight of a word occurring in a document. Throws if the word is absent.
double weight(std::string_view word, const Document& doc, const Corpus& corpus,
              WeightScheme scheme);

/// Per distinct word weight used to build document vectors: the uniform
/// per-occurrence weight summed over occurrences (so uniform behaves like
/// tf), the scheme's weight otherwise. Keys are sorted.
std::map<std::string, double, std::less<>> distinct_word_weights(
    const Document& doc, const Corpus& corpus, WeightScheme scheme);

template <typename Pred>
CorpusBuild Corpus::filter_tokens(Pred keep, const std::string& reason) const {
  std::vector<Document> kept;
  kept.reserve(documents_.size());
  std::vector<SkipRecord> dropped;
  for (const auto& doc : documents_) {
    Document copy{doc.id, {}, doc.label};
    for (const auto& token : doc.tokens) {
      if (keep(token)) copy.tokens.push_back(token);
    }
    if (copy.tokens.empty()) {
      dropped.push_back({doc.id, reason});
    } else {
      kept.push_back(std::move(copy));
    }
  }
  CorpusBuild build = from_documents(std::move(kept), log_base_);
  build.rejected.insert(build.rejected.begin(), dropped.begin(), dropped.end());
  return build;
}

}  // namespace xgsc
