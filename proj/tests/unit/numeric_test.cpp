#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/adam.hpp"
#include "sentikit/numeric/functions.hpp"
#include "sentikit/numeric/rng.hpp"
#include "sentikit/numeric/sparse.hpp"
#include "sentikit/numeric/tensor.hpp"

using namespace sentikit;
using namespace sentikit::numeric;

TEST(Rng, SeedZeroMatchesReferenceStream) {
  Rng rng(0);
  EXPECT_EQ(rng.next_u64(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next_u64(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next_u64(), 0x06c45d188009454fULL);
  EXPECT_EQ(rng.next_u64(), 0xf88bb8a8724c81ecULL);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(1234), b(1234);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_EQ(a.uniform(-2, 3), b.uniform(-2, 3));
  }
}

TEST(Rng, SplitTagsDiffer) {
  Rng s(99);
  EXPECT_NE(s.split(1).next_u64(), s.split(2).next_u64());
}

TEST(Rng, SplitIgnoresParentPosition) {
  Rng a(5);
  Rng b(5);
  for (int i = 0; i < 10; ++i) b.next_u64();
  EXPECT_EQ(a.split(3).next_u64(), b.split(3).next_u64());
}

TEST(Rng, UniformRange) {
  Rng r(8);
  for (int i = 0; i < 10000; ++i) {
    double v = r.uniform(-0.5, 2.0);
    ASSERT_GE(v, -0.5);
    ASSERT_LT(v, 2.0);
  }
  EXPECT_THROW(r.uniform(1.0, 1.0), Error);
}

TEST(Rng, BelowIsRoughlyUniform) {
  Rng r(3);
  std::array<int, 7> hits{};
  for (int i = 0; i < 70000; ++i) ++hits[r.below(7)];
  for (int h : hits) EXPECT_NEAR(h, 10000, 500);
}

TEST(Rng, ShuffleSingletonAndPermutation) {
  Rng r(1);
  std::vector<int> one{42};
  r.shuffle(std::span<int>(one));
  EXPECT_EQ(one, std::vector<int>{42});
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  r.shuffle(std::span<int>(v));
  std::multiset<int> s(v.begin(), v.end());
  EXPECT_EQ(s.size(), 50u);
  EXPECT_EQ(*s.begin(), 0);
  EXPECT_EQ(*s.rbegin(), 49);
  EXPECT_FALSE(std::is_sorted(v.begin(), v.end()));
}

TEST(Softmax, UniformLogits) {
  std::vector<double> z{0, 0, 0};
  auto p = stable_softmax(z);
  for (double v : p) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
}

TEST(Softmax, LargeLogitNoOverflow) {
  std::vector<double> z{1000, 0, 0};
  auto p = stable_softmax(z);
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  EXPECT_GE(p[1], 0.0);
  EXPECT_TRUE(std::isfinite(p[1]));
}

TEST(Softmax, LogOfIntegers) {
  std::vector<double> z{std::log(1.0), std::log(2.0), std::log(3.0)};
  auto p = stable_softmax(z);
  EXPECT_NEAR(p[0], 1.0 / 6, 1e-12);
  EXPECT_NEAR(p[1], 2.0 / 6, 1e-12);
  EXPECT_NEAR(p[2], 3.0 / 6, 1e-12);
}

TEST(Softmax, SumsToOneAndShiftInvariant) {
  Rng r(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> z(1 + r.below(6));
    for (double& v : z) v = r.uniform(-30, 30);
    auto p = stable_softmax(z);
    double total = 0;
    for (double v : p) {
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
      total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    double c = r.uniform(-100, 100);
    std::vector<double> shifted = z;
    for (double& v : shifted) v += c;
    auto q = stable_softmax(shifted);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-12);
    auto lp = log_softmax(z);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(std::exp(lp[i]), p[i], 1e-12);
  }
}

TEST(Sigmoid, Basics) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_FALSE(std::isnan(sigmoid(-1e308)));
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  for (double x : {0.1, 1.0, 3.5, 17.0, 40.0}) EXPECT_NEAR(sigmoid(x) + sigmoid(-x), 1.0, 1e-15);
}

TEST(Softplus, Stable) {
  EXPECT_NEAR(softplus(0.0), std::log(2.0), 1e-15);
  EXPECT_EQ(softplus(1000.0), 1000.0);
  EXPECT_NEAR(softplus(-1000.0), 0.0, 1e-300);
  EXPECT_NEAR(softplus(2.0), std::log1p(std::exp(2.0)), 1e-14);
}

TEST(Argmax, FirstWins) {
  std::vector<double> v{1, 3, 3};
  EXPECT_EQ(argmax(v), 1u);
  std::vector<double> w{2, 2, 2};
  EXPECT_EQ(argmax(w), 0u);
}

TEST(Adam, ZeroGradientLeavesParams) {
  Tensor p({3}, std::vector<double>{1, -2, 3});
  Tensor g({3});
  Adam opt({}, {&p});
  opt.step({&p}, {&g});
  EXPECT_EQ(p, Tensor({3}, std::vector<double>{1, -2, 3}));
  EXPECT_EQ(opt.steps(), 1u);
}

TEST(Adam, FirstStepClosedForm) {
  Tensor p({1}, std::vector<double>{1.0});
  Tensor g({1}, std::vector<double>{0.5});
  Adam opt({}, {&p});
  opt.step({&p}, {&g});
  double expected = 1.0 - 1e-3 * (0.5 / (0.5 + 1e-8));
  EXPECT_NEAR(p[0], expected, 1e-15);
  EXPECT_NEAR(p[0], 0.999, 1e-7);
}

TEST(Adam, ConstantGradientMovesMonotonically) {
  Tensor p({2}, std::vector<double>{0.0, 0.0});
  Tensor g({2}, std::vector<double>{0.3, -0.7});
  Adam opt({}, {&p});
  double prev0 = 0, prev1 = 0;
  for (int i = 0; i < 5; ++i) {
    opt.step({&p}, {&g});
    EXPECT_LT(p[0], prev0);
    EXPECT_GT(p[1], prev1);
    prev0 = p[0];
    prev1 = p[1];
  }
}

TEST(Adam, ZeroLearningRateNeverMoves) {
  Rng r(4);
  Tensor p({5});
  for (double& v : p.values()) v = r.uniform(-1, 1);
  Tensor before = p;
  AdamConfig cfg;
  cfg.learning_rate = 0.0;
  Adam opt(cfg, {&p});
  for (int i = 0; i < 20; ++i) {
    Tensor g({5});
    for (double& v : g.values()) v = r.uniform(-5, 5);
    opt.step({&p}, {&g});
  }
  EXPECT_EQ(p, before);
}

TEST(Adam, ShapeMismatchRejected) {
  Tensor p({2});
  Tensor g({3});
  Adam opt({}, {&p});
  EXPECT_THROW(opt.step({&p}, {&g}), Error);
}

TEST(Tensor, ShapeCount) {
  Tensor t({2, 3, 4});
  EXPECT_EQ(t.size(), 24u);
  EXPECT_THROW(Tensor({2, 2}, std::vector<double>{1, 2, 3}), Error);
}

TEST(Sparse, FromEntriesSortsSumsAndDropsZeros) {
  auto v = SparseVector::from_entries(10, {{5, 1.0}, {2, 3.0}, {5, -1.0}, {7, 2.0}, {2, 1.0}});
  ASSERT_EQ(v.nnz(), 2u);
  EXPECT_EQ(v.entries()[0], (SparseVector::Entry{2, 4.0}));
  EXPECT_EQ(v.entries()[1], (SparseVector::Entry{7, 2.0}));
  EXPECT_EQ(v.get(5), 0.0);
  EXPECT_THROW(SparseVector::from_entries(3, {{3, 1.0}}), Error);
}

TEST(Sparse, DotAndNorm) {
  auto a = SparseVector::from_entries(6, {{0, 1.0}, {3, 2.0}, {5, -1.0}});
  auto b = SparseVector::from_entries(6, {{3, 4.0}, {4, 9.0}, {5, 2.0}});
  EXPECT_DOUBLE_EQ(a.dot(b), 6.0);
  EXPECT_DOUBLE_EQ(a.squared_norm(), 6.0);
  std::vector<double> dense{1, 1, 1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(a.dot_dense(dense.data()), 2.0);
  a.scale(0.0);
  EXPECT_TRUE(a.empty());
}

TEST(Sparse, MatrixRejectsWrongDimension) {
  SparseRowMatrix m(4);
  m.push_back(SparseVector(4));
  EXPECT_THROW(m.push_back(SparseVector(5)), Error);
}
