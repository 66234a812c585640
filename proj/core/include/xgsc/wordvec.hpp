#pragma once

#include "xgsc/corpus.hpp"
#include "xgsc/word_space.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xgsc {

/// Word -> vector store with a fixed dimension. Vectors are stored
/// contiguously in insertion order.
class WordVectorTable final : public WordSpace {
 public:
  WordVectorTable(std::size_t dim, std::string source_name);

  /// Returns false and keeps the existing entry if the word is already present.
  bool insert(std::string word, std::span<const double> values);

  std::optional<std::span<const double>> find(std::string_view word) const;

  std::size_t dim() const override { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::string& source_name() const noexcept { return source_name_; }
  const std::vector<std::string>& words() const noexcept { return words_; }

  bool contains(std::string_view word) const override;
  void add_scaled(std::string_view word, double coeff, Vector& out) const override;
  double dot(std::string_view word, const Vector& v) const override;

 private:
  std::span<const double> row(std::size_t index) const;
  std::size_t index_of(std::string_view word) const;

  std::size_t dim_;
  std::string source_name_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Parses GloVe text format: "word v1 ... vd" per line, single spaces, no
/// header. The dimension comes from the first line. With `limit_vocab`,
/// only listed words are parsed and retained.
WordVectorTable read_glove_text(std::istream& in, std::string source_name,
                                const Corpus::WordSet* limit_vocab = nullptr);
WordVectorTable load_glove_text(const std::filesystem::path& path,
                                const Corpus::WordSet* limit_vocab = nullptr);

/// Writes the table back in GloVe text format with round-trip precision.
void write_glove_text(std::ostream& out, const WordVectorTable& table);

struct CoverageStats {
  std::size_t vocabulary_size = 0;
  std::size_t in_vocabulary = 0;
  std::size_t out_of_vocabulary = 0;
  double coverage = 0.0;
  /// Fraction of tokens (occurrences) missing from the table, per document.
  std::vector<double> document_oov_ratio;
  std::vector<std::string> fully_oov_documents;
};

CoverageStats coverage_report(const WordVectorTable& table, const Corpus& corpus);

/// Drops out-of-vocabulary tokens; documents left empty are rejected with
/// reason "all tokens out of vocabulary".
CorpusBuild restrict_to_table(const Corpus& corpus, const WordSpace& table);

}  // namespace xgsc
