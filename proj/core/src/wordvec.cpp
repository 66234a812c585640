#include "xgsc/wordvec.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace xgsc {

WordVectorTable::WordVectorTable(std::size_t dim, std::string source_name)
    : dim_(dim), source_name_(std::move(source_name)) {
  if (dim_ == 0) throw Error("wordvec", "vector dimension must be positive");
}

bool WordVectorTable::insert(std::string word, std::span<const double> values) {
  if (values.size() != dim_) {
    throw Error("wordvec", "vector for '" + word + "' has " + std::to_string(values.size()) +
                               " components, expected " + std::to_string(dim_));
  }
  if (index_.contains(word)) return false;
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), values.begin(), values.end());
  return true;
}

std::span<const double> WordVectorTable::row(std::size_t index) const {
  return {data_.data() + index * dim_, dim_};
}

std::size_t WordVectorTable::index_of(std::string_view word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) {
    throw Error("wordvec", "word '" + std::string(word) + "' not in table");
  }
  return it->second;
}

std::optional<std::span<const double>> WordVectorTable::find(std::string_view word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

bool WordVectorTable::contains(std::string_view word) const { return index_.contains(word); }

void WordVectorTable::add_scaled(std::string_view word, double coeff, Vector& out) const {
  const auto values = row(index_of(word));
  for (std::size_t c = 0; c < dim_; ++c) out[static_cast<Eigen::Index>(c)] += coeff * values[c];
}

double WordVectorTable::dot(std::string_view word, const Vector& v) const {
  const auto values = row(index_of(word));
  double sum = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) sum += values[c] * v[static_cast<Eigen::Index>(c)];
  return sum;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t end = line.find(' ', pos);
    const std::size_t stop = end == std::string_view::npos ? line.size() : end;
    if (stop > pos) fields.push_back(line.substr(pos, stop - pos));
    pos = stop + 1;
  }
  return fields;
}

}  // namespace

WordVectorTable read_glove_text(std::istream& in, std::string source_name,
                                const Corpus::WordSet* limit_vocab) {
  std::optional<WordVectorTable> table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
    if (view.empty()) continue;
    const auto fields = split_fields(view);
    if (fields.size() < 2) {
      throw Error("wordvec", "malformed line " + std::to_string(line_no) +
                                 ": expected a word followed by values");
    }
    const std::size_t dim = fields.size() - 1;
    if (!table) {
      table.emplace(dim, source_name);
    } else if (dim != table->dim()) {
      throw Error("wordvec", "dimension mismatch at line " + std::to_string(line_no));
    }
    if (limit_vocab != nullptr && !limit_vocab->contains(fields[0])) continue;

    values.resize(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      const auto f = fields[c + 1];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), values[c]);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw Error("wordvec", "unparsable value '" + std::string(f) + "' at line " +
                                   std::to_string(line_no));
      }
    }
    table->insert(std::string(fields[0]), values);
  }
  if (!table) throw Error("wordvec", "no vectors found in " + source_name);
  return std::move(*table);
}

WordVectorTable load_glove_text(const std::filesystem::path& path,
                                const Corpus::WordSet* limit_vocab) {
  std::ifstream in(path);
  if (!in) throw Error("wordvec", "cannot open vector file " + path.string());
  return read_glove_text(in, path.filename().string(), limit_vocab);
}

void write_glove_text(std::ostream& out, const WordVectorTable& table) {
  char buffer[64];
  for (const auto& word : table.words()) {
    out << word;
    const auto values = *table.find(word);
    for (const double v : values) {
      const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
      out << ' ' << std::string_view(buffer, static_cast<std::size_t>(ptr - buffer));
    }
    out << '\n';
  }
}

CoverageStats coverage_report(const WordVectorTable& table, const Corpus& corpus) {
  CoverageStats stats;
  stats.vocabulary_size = corpus.vocabulary().size();
  for (const auto& word : corpus.vocabulary()) {
    if (table.contains(word)) ++stats.in_vocabulary;
  }
  stats.out_of_vocabulary = stats.vocabulary_size - stats.in_vocabulary;
  stats.coverage = stats.vocabulary_size == 0
                       ? 0.0
                       : static_cast<double>(stats.in_vocabulary) /
                             static_cast<double>(stats.vocabulary_size);
  for (const auto& doc : corpus.documents()) {
    std::size_t missing = 0;
    for (const auto& t : doc.tokens) {
      if (!table.contains(t)) ++missing;
    }
    const double ratio = static_cast<double>(missing) / static_cast<double>(doc.tokens.size());
    stats.document_oov_ratio.push_back(ratio);
    if (missing == doc.tokens.size()) stats.fully_oov_documents.push_back(doc.id);
  }
  return stats;
}

CorpusBuild restrict_to_table(const Corpus& corpus, const WordSpace& table) {
  return corpus.filter_tokens([&](const std::string& w) { return table.contains(w); },
                              "all tokens out of vocabulary");
}

}  // namespace xgsc
