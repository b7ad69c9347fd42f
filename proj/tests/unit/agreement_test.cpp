#include <gtest/gtest.h>

#include <cmath>

#include "sentikit/agreement/kappa.hpp"
#include "sentikit/agreement/store.hpp"
#include "sentikit/common/error.hpp"
#include "sentikit/common/json_io.hpp"
#include "sentikit/corpus/corpus.hpp"
#include "sentikit/numeric/rng.hpp"

using namespace sentikit;
using namespace sentikit::agreement;

namespace {

const std::string kFixtures = SENTIKIT_FIXTURE_DIR;
constexpr Sentiment N = Sentiment::kNegative;
constexpr Sentiment P = Sentiment::kPositive;
constexpr Sentiment U = Sentiment::kNeutral;

// 2x2 contingency table built from scratch, kappa from its cells
double brute_kappa(const std::vector<Sentiment>& a, const std::vector<Sentiment>& b, Sentiment target) {
  double cell[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < a.size(); ++i) cell[a[i] == target][b[i] == target] += 1;
  double n = static_cast<double>(a.size());
  double po = (cell[0][0] + cell[1][1]) / n;
  double a_yes = (cell[1][0] + cell[1][1]) / n, b_yes = (cell[0][1] + cell[1][1]) / n;
  double pe = a_yes * b_yes + (1 - a_yes) * (1 - b_yes);
  if (po == 1.0) return 1.0;
  return (po - pe) / (1 - pe);
}

AnnotationRecord rec(const std::string& id, const std::string& who, Sentiment s) { return {id, who, s, 0}; }

corpus::LabeledCorpus make_comments(std::size_t n) {
  corpus::LabeledCorpus c;
  for (std::size_t i = 0; i < n; ++i) c.add({{"k" + std::to_string(10 + i), "comment " + std::to_string(i)}, {}});
  return c;
}

}  // namespace

TEST(Kappa, HandTable) {
  // both-yes 4, both-no 4, a-only 1, b-only 1
  std::vector<Sentiment> a{P, P, P, P, N, N, N, N, P, N};
  std::vector<Sentiment> b{P, P, P, P, N, N, N, N, N, P};
  EXPECT_NEAR(cohen_kappa_binary(a, b, P), 0.6, 1e-12);
  EXPECT_NEAR(brute_kappa(a, b, P), 0.6, 1e-12);
}

TEST(Kappa, IdenticalSequences) {
  std::vector<Sentiment> a{N, P, U, U, N};
  EXPECT_EQ(cohen_kappa_binary(a, a, P), 1.0);
  std::vector<Sentiment> constant{U, U, U};
  EXPECT_EQ(cohen_kappa_binary(constant, constant, N), 1.0);
}

TEST(Kappa, Errors) {
  std::vector<Sentiment> empty;
  EXPECT_THROW(cohen_kappa_binary(empty, empty, N), Error);
  std::vector<Sentiment> a{N, P}, b{N};
  EXPECT_THROW(cohen_kappa_binary(a, b, N), Error);
}

TEST(Kappa, RandomOracleSymmetryBounds) {
  numeric::Rng r(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + r.below(50);
    std::vector<Sentiment> a(n), b(n);
    bool skewed = r.below(4) == 0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = sentiment_at(r.below(3));
      b[i] = skewed && r.below(2) ? a[i] : sentiment_at(r.below(3));
    }
    for (Sentiment t : kAllSentiments) {
      double k;
      try {
        k = cohen_kappa_binary(a, b, t);
      } catch (const Error&) {
        continue;  // degenerate marginals with disagreement
      }
      EXPECT_NEAR(k, brute_kappa(a, b, t), 1e-12);
      EXPECT_EQ(k, cohen_kappa_binary(b, a, t));
      EXPECT_GE(k, -1.0 - 1e-12);
      EXPECT_LE(k, 1.0 + 1e-12);
    }
  }
}

TEST(Kappa, TargetRestRelabelingInvariant) {
  // with only two categories present, "target = P" and "target = N" are the same 2x2 table transposed
  numeric::Rng r(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + r.below(40);
    std::vector<Sentiment> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = r.below(2) ? P : N;
      b[i] = r.below(3) ? a[i] : (r.below(2) ? P : N);
    }
    try {
      EXPECT_NEAR(cohen_kappa_binary(a, b, P), cohen_kappa_binary(a, b, N), 1e-12);
    } catch (const Error&) {
    }
  }
}

TEST(Roles, Validation) {
  AnnotatorRoles ok;
  EXPECT_NO_THROW(ok.validate());
  AnnotatorRoles same{"x", "x", "y"};
  EXPECT_THROW(same.validate(), Error);
  AnnotatorRoles adj{"x", "y", "x"};
  EXPECT_THROW(adj.validate(), Error);
  AnnotatorRoles empty{"", "y", "z"};
  EXPECT_THROW(empty.validate(), Error);
}

TEST(Store, RecordRules) {
  AnnotationStore s;
  s.add_record(rec("c1", "annotator1", P));
  try {
    s.add_record(rec("c1", "annotator1", N));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConflict);
  }
  EXPECT_EQ(s.label_of("c1", "annotator1"), P);
  try {
    s.add_record(rec("c1", "annotator3", N));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
}

TEST(Store, AllAgree) {
  AnnotationStore s;
  std::vector<Sentiment> labels{N, P, U, U, P};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    s.add_record(rec("c" + std::to_string(i), "annotator1", labels[i]));
    s.add_record(rec("c" + std::to_string(i), "annotator2", labels[i]));
  }
  auto r = s.report();
  EXPECT_TRUE(r.pending.empty());
  EXPECT_TRUE(s.adjudication_queue().empty());
  EXPECT_EQ(r.total, 5u);
  EXPECT_EQ(r.classes[0].count, 1u);
  EXPECT_EQ(r.classes[1].count, 2u);
  EXPECT_EQ(r.classes[2].count, 2u);
  for (const auto& c : r.classes) EXPECT_EQ(c.kappa, 1.0);
}

TEST(Store, TenCommentsTwoUnresolved) {
  AnnotationStore s;
  for (int i = 0; i < 10; ++i) {
    std::string id = "c" + std::to_string(i);
    s.add_record(rec(id, "annotator1", sentiment_at(i % 3)));
    s.add_record(rec(id, "annotator2", i < 2 ? sentiment_at((i + 1) % 3) : sentiment_at(i % 3)));
  }
  auto r = s.report();
  EXPECT_EQ(r.total, 8u);
  EXPECT_EQ(r.pending.size(), 2u);
  EXPECT_EQ(r.double_labeled, 10u);
  double prevalence = 0;
  std::size_t count = 0;
  for (const auto& c : r.classes) {
    prevalence += c.prevalence;
    count += c.count;
  }
  EXPECT_NEAR(prevalence, 1.0, 1e-9);
  EXPECT_EQ(count, r.total);
}

TEST(Store, QueueAndResolve) {
  AnnotationStore s;
  s.add_record(rec("b", "annotator1", P));
  s.add_record(rec("b", "annotator2", N));
  s.add_record(rec("a", "annotator1", U));
  s.add_record(rec("a", "annotator2", U));
  s.add_record(rec("c", "annotator1", P));
  s.add_record(rec("c", "annotator2", U));
  EXPECT_EQ(s.adjudication_queue(), (std::vector<std::string>{"b", "c"}));
  EXPECT_FALSE(s.gold_label("b").has_value());
  s.resolve("b", N);
  EXPECT_EQ(s.gold_label("b"), N);
  EXPECT_EQ(s.adjudication_queue(), std::vector<std::string>{"c"});
  try {
    s.resolve("b", P);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConflict);
  }
  try {
    s.resolve("a", P);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConflict);
  }
  EXPECT_EQ(s.gold_label("a"), U);
}

TEST(Store, SingleLabelNotQueued) {
  AnnotationStore s;
  s.add_record(rec("x", "annotator1", P));
  EXPECT_TRUE(s.adjudication_queue().empty());
  EXPECT_FALSE(s.gold_label("x").has_value());
  EXPECT_THROW(s.resolve("x", P), Error);
  auto r = s.report();
  EXPECT_EQ(r.total, 0u);
  for (const auto& c : r.classes) EXPECT_FALSE(c.kappa.has_value());
}

TEST(Store, ExportGoldAccounting) {
  auto comments = make_comments(12);
  AnnotationStore s;
  numeric::Rng r(4);
  for (std::size_t i = 0; i < comments.size(); ++i) {
    const auto& id = comments[i].comment.id;
    if (i == 11) continue;  // nobody
    s.add_record(rec(id, "annotator1", sentiment_at(r.below(3))));
    if (i == 10) continue;  // one annotator only
    s.add_record(rec(id, "annotator2", sentiment_at(r.below(3))));
  }
  auto queue = s.adjudication_queue();
  std::size_t missing = 2;
  auto gold = s.export_gold(comments);
  EXPECT_EQ(gold.size() + queue.size() + missing, comments.size());
  EXPECT_TRUE(gold.all_labeled());
  for (const auto& id : queue) s.resolve(id, P);
  EXPECT_EQ(s.export_gold(comments).size(), comments.size() - missing);
  // order follows the corpus
  auto g = s.export_gold(comments);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g[i - 1].comment.id, g[i].comment.id);
}

TEST(Store, ResolvingEveryDisputeExportsEverything) {
  auto comments = make_comments(20);
  AnnotationStore s;
  numeric::Rng r(12);
  for (const auto& it : comments) {
    s.add_record(rec(it.comment.id, "annotator1", sentiment_at(r.below(3))));
    s.add_record(rec(it.comment.id, "annotator2", sentiment_at(r.below(3))));
  }
  for (const auto& id : s.adjudication_queue()) s.resolve(id, U);
  EXPECT_EQ(s.export_gold(comments).size(), 20u);
  EXPECT_TRUE(s.report().pending.empty());
}

TEST(Store, JsonlRoundTrip) {
  AnnotationStore s;
  s.add_record({"a", "annotator1", P, 5});
  s.add_record({"a", "annotator2", N, 6});
  s.add_record({"b", "annotator2", U, 7});
  s.resolve("a", P, 9);
  auto text = to_jsonl(s);
  auto back = parse_annotations(text, {});
  EXPECT_EQ(back, s);
  EXPECT_EQ(to_jsonl(back), text);
}

TEST(Store, AdjudicationLinesApplyAfterPrimaries) {
  std::string text =
      "{\"comment_id\":\"a\",\"annotator\":\"annotator3\",\"label\":\"Positive\"}\n"
      "{\"comment_id\":\"a\",\"annotator\":\"annotator1\",\"label\":\"Positive\"}\n"
      "{\"comment_id\":\"a\",\"annotator\":\"annotator2\",\"label\":\"Negative\"}\n";
  auto s = parse_annotations(text, {});
  EXPECT_EQ(s.gold_label("a"), P);
}

TEST(Store, CustomRoles) {
  AnnotatorRoles roles{"ann", "bob", "cat"};
  std::string text =
      "{\"comment_id\":\"a\",\"annotator\":\"ann\",\"label\":\"Positive\"}\n"
      "{\"comment_id\":\"a\",\"annotator\":\"bob\",\"label\":\"Positive\"}\n";
  auto s = parse_annotations(text, roles);
  EXPECT_EQ(s.gold_label("a"), P);
  EXPECT_THROW(parse_annotations(text, {}), Error);
}

TEST(Store, BadLines) {
  EXPECT_THROW(parse_annotations("{\"comment_id\":\"a\",\"annotator\":\"annotator1\",\"label\":\"good\"}\n", {}),
               Error);
  EXPECT_THROW(parse_annotations("not json\n", {}), Error);
}

TEST(Fixture, TableOneCountsAndKappa) {
  auto comments = corpus::load_corpus(kFixtures + "/annotation_corpus.jsonl", corpus::Format::kJsonl);
  auto store = load_annotations(kFixtures + "/annotations.jsonl", {});
  auto r = store.report();
  EXPECT_EQ(r.total, 300u);
  EXPECT_EQ(r.classes[0].count, 72u);
  EXPECT_EQ(r.classes[1].count, 85u);
  EXPECT_EQ(r.classes[2].count, 143u);
  EXPECT_NEAR(r.classes[0].prevalence, 0.2400, 5e-5);
  EXPECT_NEAR(r.classes[1].prevalence, 0.2833, 5e-5);
  EXPECT_NEAR(r.classes[2].prevalence, 0.4767, 5e-5);
  EXPECT_NEAR(*r.classes[0].kappa, 0.825, 1e-3);
  EXPECT_NEAR(*r.classes[1].kappa, 0.877, 1e-3);
  EXPECT_NEAR(*r.classes[2].kappa, 0.902, 1e-3);
  auto gold = store.export_gold(comments);
  EXPECT_EQ(gold.size(), 300u);
  EXPECT_EQ(gold.size() + r.pending.size(), comments.size());
  EXPECT_EQ(corpus::to_jsonl(gold), read_text_file(kFixtures + "/synthetic300.jsonl"));
}
