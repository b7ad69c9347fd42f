#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sentikit/corpus/corpus.hpp"

namespace sentikit::corpus {

struct SplitSpec {
  double test_fraction = 0.2;
  double dev_fraction = 0.1;
  std::size_t folds = 5;
  std::uint64_t seed = 0;

  /// Throws unless both fractions lie in (0,1) and folds >= 2.
  void validate() const;
};

struct Split {
  LabeledCorpus first;   // train (or fit)
  LabeledCorpus second;  // test (or dev)
};

/// Number of items of a class of size `count` that go to the held-out side:
/// round-half-up(count * fraction).
std::size_t held_out_count(std::size_t count, double fraction);

/// Class-stratified holdout. Each class contributes round-half-up(count *
/// fraction) items to the held-out side, selected by a seeded shuffle; if
/// every class rounds to zero the largest class contributes one. Both sides
/// keep corpus order.
Split stratified_split(const LabeledCorpus& corpus, double test_fraction, std::uint64_t seed);

/// Same procedure applied to a training set to carve out a development set.
Split dev_split(const LabeledCorpus& train, double dev_fraction, std::uint64_t seed);

/// Stratified k-fold. Each class is shuffled and dealt round-robin over the
/// folds, continuing the deal where the previous class stopped so fold
/// totals stay balanced. Returns (train, valid) pairs in corpus order.
std::vector<Split> kfold(const LabeledCorpus& corpus, std::size_t folds, std::uint64_t seed);

}  // namespace sentikit::corpus
