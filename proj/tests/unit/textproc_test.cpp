#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/rng.hpp"
#include "sentikit/textproc/embeddings.hpp"
#include "sentikit/textproc/sequence.hpp"
#include "sentikit/textproc/tfidf.hpp"
#include "sentikit/textproc/tokenize.hpp"
#include "sentikit/textproc/vocabulary.hpp"

using namespace sentikit;
using namespace sentikit::textproc;

namespace {

std::string join(const Tokens& t) {
  std::string s;
  for (const auto& w : t) s += (s.empty() ? "" : " ") + w;
  return s;
}

std::vector<Tokens> random_corpus(numeric::Rng& r, std::size_t docs, std::size_t alphabet) {
  std::vector<Tokens> out(docs);
  for (auto& d : out) {
    std::size_t len = r.below(8);
    for (std::size_t i = 0; i < len; ++i) d.push_back("w" + std::to_string(r.below(alphabet)));
  }
  return out;
}

}  // namespace

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("I've really struggled"), (Tokens{"i've", "really", "struggled"}));
  EXPECT_EQ(tokenize(""), Tokens{});
  EXPECT_EQ(tokenize("Trans, trans!"), (Tokens{"trans", "trans"}));
}

TEST(Tokenize, PunctuationAndUnicode) {
  EXPECT_EQ(tokenize("  (well-known)...  \"quotes\" -- !!! "), (Tokens{"well-known", "quotes"}));
  EXPECT_EQ(tokenize("\xE2\x80\x9Chello\xE2\x80\x9D\xC2\xA0world\xE2\x80\xA6"), (Tokens{"hello", "world"}));
  EXPECT_EQ(tokenize("line\none\ttab"), (Tokens{"line", "one", "tab"}));
  EXPECT_EQ(tokenize("<pad> <unk>"), (Tokens{"pad", "unk"}));
}

TEST(Tokenize, IdempotentOnJoinedOutput) {
  numeric::Rng r(8);
  const std::string alphabet = "aB,.!? '-\"()xyzQ\n\t";
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    std::size_t len = r.below(40);
    for (std::size_t i = 0; i < len; ++i) s += alphabet[r.below(alphabet.size())];
    auto once = tokenize(s);
    EXPECT_EQ(tokenize(join(once)), once) << s;
  }
}

TEST(Vocabulary, Examples) {
  std::vector<Tokens> docs{{"a", "b"}, {"b", "c"}};
  auto v = build_vocabulary(docs, 1, 5000);
  EXPECT_EQ(v.tokens(), (std::vector<std::string>{"<pad>", "<unk>", "b", "a", "c"}));
  auto v2 = build_vocabulary(docs, 2, 5000);
  EXPECT_EQ(v2.tokens(), (std::vector<std::string>{"<pad>", "<unk>", "b"}));
  auto v3 = build_vocabulary(docs, 1, 3);
  EXPECT_EQ(v3.tokens(), (std::vector<std::string>{"<pad>", "<unk>", "b"}));
  EXPECT_EQ(v.find("c"), 4u);
  EXPECT_FALSE(v.find("zzz").has_value());
}

TEST(Vocabulary, Preconditions) {
  std::vector<Tokens> docs{{"a"}};
  EXPECT_THROW(build_vocabulary({}, 1, 10), Error);
  EXPECT_THROW(build_vocabulary(docs, 0, 10), Error);
  EXPECT_THROW(build_vocabulary(docs, 1, 1), Error);
}

TEST(Vocabulary, HashDependsOnTokens) {
  Vocabulary a({"x", "y"}), b({"y", "x"}), c({"x", "y"});
  EXPECT_EQ(a.hash(), c.hash());
  EXPECT_NE(a.hash(), b.hash());
}

TEST(Bow, Counts) {
  std::vector<Tokens> docs{{"a", "b"}, {"b", "c"}};
  auto v = build_vocabulary(docs, 1, 5000);
  auto x = bow_vectorize({"b", "b", "a"}, v);
  ASSERT_EQ(x.nnz(), 2u);
  EXPECT_EQ(x.entries()[0].index, 2u);
  EXPECT_EQ(x.entries()[0].value, 2.0);
  EXPECT_EQ(x.entries()[1].index, 3u);
  EXPECT_EQ(x.entries()[1].value, 1.0);
  EXPECT_TRUE(bow_vectorize({"zz", "qq"}, v).empty());
  EXPECT_TRUE(bow_vectorize({}, v).empty());
  EXPECT_EQ(x.dimension(), v.size());
}

TEST(Tfidf, IdfValues) {
  EXPECT_NEAR(smoothed_idf(2, 1), 1.405465, 1e-6);
  EXPECT_EQ(smoothed_idf(2, 2), 1.0);
  EXPECT_NEAR(smoothed_idf(2, 0), 2.098612, 1e-6);
}

TEST(Tfidf, WorkedExample) {
  std::vector<Tokens> docs{tokenize("good good day"), tokenize("bad day")};
  auto v = build_vocabulary(docs, 1, 5000);
  auto m = tfidf_fit(docs, v);
  auto x = m.transform(docs[0], v);
  double good = x.get(*v.find("good")), day = x.get(*v.find("day"));
  EXPECT_NEAR(good, 0.94216, 1e-5);
  EXPECT_NEAR(day, 0.33518, 1e-5);
  // hand computation: tf*idf = (2 * (ln 1.5 + 1), 1), L2-normalized
  double g = 2 * (std::log(1.5) + 1), d = 1.0, n = std::sqrt(g * g + d * d);
  EXPECT_NEAR(good, g / n, 1e-12);
  EXPECT_NEAR(day, d / n, 1e-12);
  EXPECT_EQ(x.get(*v.find("bad")), 0.0);
}

TEST(Tfidf, EmptyAndSingleToken) {
  std::vector<Tokens> docs{{"a", "b"}, {"b"}};
  auto v = build_vocabulary(docs, 1, 5000);
  auto m = tfidf_fit(docs, v);
  EXPECT_TRUE(m.transform({}, v).empty());
  auto one = m.transform({"a"}, v);
  ASSERT_EQ(one.nnz(), 1u);
  EXPECT_NEAR(one.entries()[0].value, 1.0, 1e-15);
}

TEST(Tfidf, BruteForceOracle) {
  numeric::Rng r(100);
  for (int trial = 0; trial < 100; ++trial) {
    auto docs = random_corpus(r, 1 + r.below(12), 3 + r.below(15));
    docs.push_back({"w0"});
    auto vocab = build_vocabulary(docs, 1 + r.below(2), 5000);
    auto model = tfidf_fit(docs, vocab);
    const double n = static_cast<double>(docs.size());
    for (std::uint32_t id = 2; id < vocab.size(); ++id) {
      double df = 0;
      for (const auto& d : docs) {
        bool seen = false;
        for (const auto& w : d) seen = seen || w == vocab.token(id);
        df += seen;
      }
      ASSERT_NEAR(model.idf()[id], std::log((1 + n) / (1 + df)) + 1, 1e-12);
      ASSERT_GT(model.idf()[id], 0.0);
    }
    for (const auto& d : docs) {
      std::vector<double> dense(vocab.size(), 0.0);
      for (const auto& w : d) {
        for (std::uint32_t id = 2; id < vocab.size(); ++id) {
          if (vocab.token(id) == w) dense[id] += model.idf()[id];
        }
      }
      double norm = 0;
      for (double x : dense) norm += x * x;
      norm = std::sqrt(norm);
      auto got = model.transform(d, vocab);
      for (std::uint32_t id = 0; id < vocab.size(); ++id) {
        double want = norm > 0 ? dense[id] / norm : 0.0;
        ASSERT_NEAR(got.get(id), want, 1e-12);
      }
      if (!got.empty()) {
        EXPECT_NEAR(got.norm(), 1.0, 1e-9);
      }
    }
  }
}

TEST(Sequence, PadAndTruncate) {
  Vocabulary v({"a", "b", "c"});
  auto s = encode_sequence({"a", "b", "zz"}, v, 19);
  EXPECT_EQ(s.true_length, 3u);
  ASSERT_EQ(s.ids.size(), 19u);
  EXPECT_EQ(s.ids[0], 2u);
  EXPECT_EQ(s.ids[1], 3u);
  EXPECT_EQ(s.ids[2], kUnkId);
  for (std::size_t i = 3; i < 19; ++i) EXPECT_EQ(s.ids[i], kPadId);
  Tokens long_doc;
  for (int i = 0; i < 100; ++i) long_doc.push_back(i % 2 ? "a" : "c");
  auto t = encode_sequence(long_doc, v, 64);
  EXPECT_EQ(t.true_length, 64u);
  EXPECT_EQ(t.ids.size(), 64u);
  EXPECT_EQ(t.ids[0], *v.find("c"));
  EXPECT_THROW(encode_sequence({"a"}, v, 18), Error);
}

TEST(Sequence, RandomInvariants) {
  numeric::Rng r(6);
  auto docs = random_corpus(r, 30, 20);
  auto v = build_vocabulary(docs, 2, 5000);
  for (int trial = 0; trial < 200; ++trial) {
    Tokens d;
    std::size_t len = r.below(90);
    for (std::size_t i = 0; i < len; ++i) d.push_back("w" + std::to_string(r.below(30)));
    auto s = encode_sequence(d, v, 64);
    EXPECT_EQ(s.true_length, std::min<std::size_t>(len, 64));
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
      EXPECT_LT(s.ids[i], v.size());
      if (i >= s.true_length) EXPECT_EQ(s.ids[i], kPadId);
      else EXPECT_NE(s.ids[i], kPadId);
    }
  }
}

TEST(Embeddings, RandomTable) {
  Vocabulary v({"a", "b", "c"});
  auto e = random_embeddings(v, 6, 42);
  ASSERT_EQ(e.rows.dim(0), 5u);
  ASSERT_EQ(e.dimension(), 6u);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(e.rows.at(kPadId, k), 0.0);
  for (std::size_t r = 1; r < 5; ++r) {
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_GE(e.rows.at(r, k), -0.05);
      EXPECT_LT(e.rows.at(r, k), 0.05);
    }
  }
  EXPECT_EQ(random_embeddings(v, 6, 42).rows, e.rows);
  EXPECT_NE(random_embeddings(v, 6, 43).rows, e.rows);
}

TEST(Embeddings, FullCoverageFile) {
  Vocabulary v({"a", "b"});
  auto e = parse_embeddings("2 3\na 1 2 3\nb 4 5 6\n", v, 1);
  EXPECT_EQ(e.pretrained_rows, 2u);
  EXPECT_EQ(e.dimension(), 3u);
  EXPECT_EQ(e.rows.at(2, 0), 1.0);
  EXPECT_EQ(e.rows.at(3, 2), 6.0);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(e.rows.at(kPadId, k), 0.0);
    EXPECT_NE(e.rows.at(kUnkId, k), 0.0);
    EXPECT_LE(std::abs(e.rows.at(kUnkId, k)), 0.05);
  }
}

TEST(Embeddings, NoHeaderAndMissingTokens) {
  Vocabulary v({"a", "b", "c"});
  auto e = parse_embeddings("b 0.5 -0.5\nzzz 9 9\n", v, 3);
  EXPECT_EQ(e.pretrained_rows, 1u);
  EXPECT_EQ(e.rows.at(3, 0), 0.5);
  EXPECT_LE(std::abs(e.rows.at(2, 0)), 0.05);
  EXPECT_EQ(parse_embeddings("b 0.5 -0.5\nzzz 9 9\n", v, 3).rows, e.rows);
}

TEST(Embeddings, EmptyFileFallsBack) {
  Vocabulary v({"a"});
  auto e = parse_embeddings("", v, 3, 8);
  EXPECT_EQ(e.dimension(), 8u);
  EXPECT_EQ(e.pretrained_rows, 0u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(e.rows.at(kPadId, k), 0.0);
  EXPECT_NE(e.rows.at(2, 0), 0.0);
}

TEST(Embeddings, Errors) {
  Vocabulary v({"a", "b"});
  EXPECT_THROW(parse_embeddings("a 1 2 3\nb 1 2\n", v, 1), Error);
  EXPECT_THROW(parse_embeddings("a 1 x 3\n", v, 1), Error);
}
