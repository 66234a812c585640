#include "xgsc/corpus.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace xgsc;

namespace {

Document doc(std::string id, std::vector<std::string> tokens) {
  return Document{std::move(id), std::move(tokens), std::nullopt};
}

/// Corpus of |D| documents in which "w" occurs in the first `df` of them.
Corpus corpus_with_df(std::size_t n_docs, std::size_t df) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n_docs; ++i) {
    std::vector<std::string> tokens{"filler" + std::to_string(i)};
    if (i < df) tokens.push_back("w");
    docs.push_back(doc("d" + std::to_string(i), tokens));
  }
  return Corpus::from_documents(std::move(docs)).corpus;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

}  // namespace

TEST(Tokenize, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(tokenize("God is LOVE."), (std::vector<std::string>{"god", "is", "love"}));
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, HyphenAndRepeatedWords) {
  EXPECT_EQ(tokenize("now-playing  remix remix"),
            (std::vector<std::string>{"now", "playing", "remix", "remix"}));
}

TEST(Tokenize, DropsUrlsAndTweetMarkers) {
  EXPECT_EQ(tokenize("#NowPlaying @dj see https://t.co/abc www.x.org now"),
            (std::vector<std::string>{"nowplaying", "dj", "see", "now"}));
  TokenizerConfig keep;
  keep.drop_urls = false;
  EXPECT_EQ(tokenize("see https://t.co/abc", keep),
            (std::vector<std::string>{"see", "https", "t", "co", "abc"}));
}

TEST(Tokenize, KeepsUtf8WordsAndStopwords) {
  EXPECT_EQ(tokenize("too why caf\xc3\xa9!"),
            (std::vector<std::string>{"too", "why", "caf\xc3\xa9"}));
}

TEST(Tokenize, IdempotentOnJoinedOutput) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "abcXYZ019 .,-#@!?'\"\t\n";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 60);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const int L = len(rng);
    for (int i = 0; i < L; ++i) s += alphabet[pick(rng)];
    const auto once = tokenize(s);
    EXPECT_EQ(tokenize(join(once)), once) << "input: " << s;
  }
}

TEST(TermFrequency, CountsPositions) {
  const Document d = doc("x", {"now", "playing", "remix", "remix"});
  EXPECT_EQ(term_frequency("remix", d), 2u);
  EXPECT_EQ(term_frequency("absent", d), 0u);
  EXPECT_EQ(term_frequency("god", doc("y", tokenize("God is LOVE."))), 1u);
}

TEST(InverseDocumentFrequency, SingleOccurrenceGivesCorpusSize) {
  EXPECT_DOUBLE_EQ(inverse_document_frequency("w", corpus_with_df(10, 1)), 10.0);
}

TEST(InverseDocumentFrequency, AbsentWordIsZero) {
  EXPECT_EQ(inverse_document_frequency("nowhere", corpus_with_df(10, 1)), 0.0);
}

TEST(InverseDocumentFrequency, NaturalLogValue) {
  // 12 / (ln 3 + 1), evaluated independently.
  EXPECT_NEAR(inverse_document_frequency("w", corpus_with_df(12, 3)), 5.718064, 1e-6);
}

TEST(InverseDocumentFrequency, LogBaseIsConfigurable) {
  std::vector<Document> docs;
  for (int i = 0; i < 12; ++i) docs.push_back(doc("d" + std::to_string(i), {i < 3 ? "w" : "v"}));
  const Corpus c = Corpus::from_documents(docs, 10.0).corpus;
  EXPECT_NEAR(inverse_document_frequency("w", c), 12.0 / (std::log10(3.0) + 1.0), 1e-12);
  EXPECT_THROW(Corpus::from_documents(docs, 1.0), Error);
}

TEST(Weight, Schemes) {
  const Corpus c = corpus_with_df(12, 3);
  const Document& d0 = c.document(0);
  EXPECT_EQ(weight("w", d0, c, WeightScheme::uniform), 1.0);
  EXPECT_EQ(weight("w", d0, c, WeightScheme::tf), 1.0);

  std::vector<Document> docs;
  for (int i = 0; i < 12; ++i) {
    std::vector<std::string> t{"f" + std::to_string(i)};
    if (i < 3) t.push_back("w");
    if (i == 0) t.push_back("w");
    docs.push_back(doc("d" + std::to_string(i), t));
  }
  const Corpus c2 = Corpus::from_documents(docs).corpus;
  EXPECT_EQ(weight("w", c2.document(0), c2, WeightScheme::tf), 2.0);
  EXPECT_NEAR(weight("w", c2.document(0), c2, WeightScheme::tfidf), 11.436129, 1e-6);
  EXPECT_NEAR(weight("w", c2.document(0), c2, WeightScheme::idf), 5.718064, 1e-6);
}

TEST(Weight, AbsentWordThrows) {
  const Corpus c = corpus_with_df(4, 1);
  EXPECT_THROW(weight("w", c.document(3), c, WeightScheme::tf), Error);
}

TEST(Weight, SchemeNames) {
  for (const auto s : {WeightScheme::uniform, WeightScheme::tf, WeightScheme::idf,
                       WeightScheme::tfidf}) {
    EXPECT_EQ(parse_weight_scheme(to_string(s)), s);
  }
  EXPECT_THROW(parse_weight_scheme("bm25"), Error);
}

TEST(CorpusProperties, RandomCorporaSatisfyInvariants) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n_docs(1, 15), n_tok(1, 12), word(0, 19);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Document> docs;
    const int n = n_docs(rng);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> t;
      const int L = n_tok(rng);
      for (int j = 0; j < L; ++j) t.push_back("w" + std::to_string(word(rng)));
      docs.push_back(doc("d" + std::to_string(i), t));
    }
    const Corpus c = Corpus::from_documents(docs).corpus;
    Corpus::WordSet uni;
    for (const auto& d : c.documents()) uni.insert(d.tokens.begin(), d.tokens.end());
    EXPECT_EQ(uni, c.vocabulary());
    for (const auto& w : c.vocabulary()) {
      EXPECT_GE(c.document_frequency(w), 1u);
      EXPECT_LE(c.document_frequency(w), c.size());
    }
    for (const auto& d : c.documents()) {
      for (const auto s : {WeightScheme::uniform, WeightScheme::tf, WeightScheme::idf,
                           WeightScheme::tfidf}) {
        double total = 0.0;
        for (const auto& t : d.tokens) {
          const double w = weight(t, d, c, s);
          EXPECT_GT(w, 0.0);
          total += w;
        }
        EXPECT_GT(total, 0.0);
      }
    }
    for (const auto& w : c.vocabulary()) {
      const double idf = inverse_document_frequency(w, c);
      for (const auto& d : c.documents()) {
        if (term_frequency(w, d) > 0) {
          EXPECT_EQ(weight(w, d, c, WeightScheme::idf), idf);
        }
      }
    }
  }
}

TEST(BuildCorpus, RejectsEmptyDocumentsWithReason) {
  const std::vector<RawDocument> raw = {
      {"a", "hello world", "x"}, {"b", "!!! ...", std::nullopt}, {"c", "", std::nullopt}};
  const CorpusBuild b = build_corpus(raw);
  ASSERT_EQ(b.corpus.size(), 1u);
  ASSERT_EQ(b.rejected.size(), 2u);
  EXPECT_EQ(b.rejected[0].doc_id, "b");
  EXPECT_EQ(b.rejected[0].reason, "empty after tokenization");
  EXPECT_EQ(b.corpus.document(0).label, std::optional<std::string>("x"));
}

TEST(BuildCorpus, DuplicateIdsThrow) {
  EXPECT_THROW(build_corpus({{"a", "x", std::nullopt}, {"a", "y", std::nullopt}}), Error);
}

TEST(FilterTokens, RecomputesStatistics) {
  const Corpus c = Corpus::from_documents({doc("a", {"x", "y"}), doc("b", {"y"})}).corpus;
  const CorpusBuild f = c.filter_tokens([](const std::string& w) { return w == "x"; }, "gone");
  ASSERT_EQ(f.corpus.size(), 1u);
  EXPECT_EQ(f.rejected.at(0).doc_id, "b");
  EXPECT_EQ(f.rejected.at(0).reason, "gone");
  EXPECT_EQ(f.corpus.document_frequency("y"), 0u);
  EXPECT_DOUBLE_EQ(inverse_document_frequency("x", f.corpus), 1.0);
}

TEST(ReadJsonl, ParsesLabelsAndNulls) {
  std::istringstream in(
      "{\"id\": \"1\", \"text\": \"a b\", \"label\": \"p\"}\n"
      "\n"
      "{\"id\": \"2\", \"text\": \"c\", \"label\": null}\n"
      "{\"id\": \"3\", \"text\": \"d\"}\n");
  const auto docs = read_jsonl(in);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].label, std::optional<std::string>("p"));
  EXPECT_FALSE(docs[1].label.has_value());
  EXPECT_FALSE(docs[2].label.has_value());
}

TEST(ReadJsonl, ErrorNamesLine) {
  std::istringstream in("{\"id\": \"1\", \"text\": \"a\"}\n{oops\n");
  try {
    read_jsonl(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(ReadPlainText, LineNumbersAsIds) {
  std::istringstream in("first doc\nsecond doc\n");
  const auto docs = read_plain_text(in);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].id, "1");
  EXPECT_EQ(docs[1].id, "2");
  EXPECT_EQ(docs[1].text, "second doc");
}
