#include "xgsc/corpus.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <unordered_set>

namespace xgsc {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool looks_like_url(std::string_view chunk) {
  auto starts = [&](std::string_view prefix) {
    if (chunk.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      const char c = chunk[i];
      const char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
      if (lower != prefix[i]) return false;
    }
    return true;
  };
  return starts("http://") || starts("https://") || starts("www.");
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw_text,
                                  const TokenizerConfig& rules) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    while (pos < raw_text.size() && is_space(static_cast<unsigned char>(raw_text[pos]))) ++pos;
    std::size_t end = pos;
    while (end < raw_text.size() && !is_space(static_cast<unsigned char>(raw_text[end]))) ++end;
    const std::string_view chunk = raw_text.substr(pos, end - pos);
    pos = end;
    if (chunk.empty() || (rules.drop_urls && looks_like_url(chunk))) continue;

    std::string current;
    for (const char ch : chunk) {
      const auto c = static_cast<unsigned char>(ch);
      if (is_word_byte(c)) {
        current.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch);
      } else if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
  }
  return tokens;
}

WeightScheme parse_weight_scheme(std::string_view name) {
  if (name == "uniform") return WeightScheme::uniform;
  if (name == "tf") return WeightScheme::tf;
  if (name == "idf") return WeightScheme::idf;
  if (name == "tfidf") return WeightScheme::tfidf;
  throw Error("corpus", "unknown weight scheme '" + std::string(name) + "'");
}

std::string_view to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::uniform: return "uniform";
    case WeightScheme::tf: return "tf";
    case WeightScheme::idf: return "idf";
    case WeightScheme::tfidf: return "tfidf";
  }
  return "unknown";
}

CorpusBuild Corpus::from_documents(std::vector<Document> documents,
                                   double idf_log_base) {
  if (!(idf_log_base > 1.0)) {
    throw Error("corpus", "idf logarithm base must exceed 1");
  }
  CorpusBuild build;
  build.corpus.log_base_ = idf_log_base;
  std::unordered_set<std::string> seen_ids;
  for (auto& doc : documents) {
    if (!seen_ids.insert(doc.id).second) {
      throw Error("corpus", "duplicate document id '" + doc.id + "'");
    }
    if (doc.tokens.empty()) {
      build.rejected.push_back({doc.id, "empty after tokenization"});
      continue;
    }
    std::set<std::string_view> distinct(doc.tokens.begin(), doc.tokens.end());
    for (const auto word : distinct) {
      auto it = build.corpus.df_.find(word);
      if (it == build.corpus.df_.end()) {
        build.corpus.df_.emplace(std::string(word), 1);
        build.corpus.vocabulary_.emplace(word);
      } else {
        ++it->second;
      }
    }
    build.corpus.documents_.push_back(std::move(doc));
  }
  return build;
}

std::size_t Corpus::document_frequency(std::string_view word) const {
  const auto it = df_.find(word);
  return it == df_.end() ? 0 : it->second;
}

CorpusBuild build_corpus(const std::vector<RawDocument>& raw,
                         const TokenizerConfig& rules, double idf_log_base) {
  std::vector<Document> docs;
  docs.reserve(raw.size());
  for (const auto& r : raw) {
    docs.push_back({r.id, tokenize(r.text, rules), r.label});
  }
  return Corpus::from_documents(std::move(docs), idf_log_base);
}

std::vector<RawDocument> read_jsonl(std::istream& in) {
  std::vector<RawDocument> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error("corpus", "invalid JSON at line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") ||
        !obj["text"].is_string()) {
      throw Error("corpus", "line " + std::to_string(line_no) +
                                " must be an object with \"id\" and \"text\"");
    }
    RawDocument doc;
    const auto& id = obj["id"];
    doc.id = id.is_string() ? id.get<std::string>() : id.dump();
    doc.text = obj["text"].get<std::string>();
    if (obj.contains("label") && !obj["label"].is_null()) {
      const auto& label = obj["label"];
      doc.label = label.is_string() ? label.get<std::string>() : label.dump();
    }
    out.push_back(std::move(doc));
  }
  return out;
}

std::vector<RawDocument> read_plain_text(std::istream& in) {
  std::vector<RawDocument> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    out.push_back({std::to_string(line_no), line, std::nullopt});
  }
  return out;
}

std::vector<RawDocument> load_raw_documents(const std::filesystem::path& path,
                                            CorpusFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("corpus", "cannot open corpus file " + path.string());
  return format == CorpusFormat::jsonl ? read_jsonl(in) : read_plain_text(in);
}

std::size_t term_frequency(std::string_view word, const Document& doc) {
  std::size_t count = 0;
  for (const auto& t : doc.tokens) {
    if (t == word) ++count;
  }
  return count;
}

double inverse_document_frequency(std::string_view word, const Corpus& corpus) {
  const std::size_t df = corpus.document_frequency(word);
  if (df == 0) return 0.0;
  const double log_df = std::log(static_cast<double>(df)) / std::log(corpus.idf_log_base());
  return static_cast<double>(corpus.size()) / (log_df + 1.0);
}

double weight(std::string_view word, const Document& doc, const Corpus& corpus,
              WeightScheme scheme) {
  const std::size_t tf = term_frequency(word, doc);
  if (tf == 0) {
    throw Error("corpus", "word '" + std::string(word) + "' does not occur in document '" +
                              doc.id + "'");
  }
  switch (scheme) {
    case WeightScheme::uniform: return 1.0;
    case WeightScheme::tf: return static_cast<double>(tf);
    case WeightScheme::idf: return inverse_document_frequency(word, corpus);
    case WeightScheme::tfidf:
      return static_cast<double>(tf) * inverse_document_frequency(word, corpus);
  }
  return 0.0;
}

std::map<std::string, double, std::less<>> distinct_word_weights(
    const Document& doc, const Corpus& corpus, WeightScheme scheme) {
  std::map<std::string, std::size_t, std::less<>> counts;
  for (const auto& t : doc.tokens) ++counts[t];
  std::map<std::string, double, std::less<>> out;
  for (const auto& [word, tf] : counts) {
    const double tf_d = static_cast<double>(tf);
    double w = 0.0;
    switch (scheme) {
      case WeightScheme::uniform:
      case WeightScheme::tf: w = tf_d; break;
      case WeightScheme::idf: w = inverse_document_frequency(word, corpus); break;
      case WeightScheme::tfidf: w = tf_d * inverse_document_frequency(word, corpus); break;
    }
    out.emplace(word, w);
  }
  return out;
}

}  // namespace xgsc
