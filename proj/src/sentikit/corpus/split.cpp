#include "sentikit/corpus/split.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "sentikit/common/error.hpp"
#include "sentikit/numeric/rng.hpp"

namespace sentikit::corpus {

namespace {

using ClassMembers = std::array<std::vector<std::size_t>, kNumClasses>;

ClassMembers members_by_class(const LabeledCorpus& corpus) {
  ClassMembers members;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& label = corpus[i].label;
    if (!label) {
      throw_error(ErrorKind::kInvalidArgument, "cannot stratify: item " + corpus[i].comment.id + " is unlabeled");
    }
    members[class_index(*label)].push_back(i);
  }
  return members;
}

void check_fraction(double fraction, const char* what) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw_error(ErrorKind::kInvalidArgument, std::string(what) + " must lie strictly between 0 and 1");
  }
}

Split holdout(const LabeledCorpus& corpus, double fraction, std::uint64_t seed) {
  ClassMembers members = members_by_class(corpus);
  std::array<std::size_t, kNumClasses> take{};
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const std::size_t n = members[c].size();
    if (n == 1) {
      throw_error(ErrorKind::kInvalidArgument, "class " + std::string(sentiment_name(sentiment_at(c))) +
                                                   " has a single item; too small to stratify");
    }
    take[c] = held_out_count(n, fraction);
  }
  if (std::all_of(take.begin(), take.end(), [](std::size_t t) { return t == 0; })) {
    std::size_t largest = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
      if (members[c].size() > members[largest].size()) largest = c;
    }
    take[largest] = 1;
  }

  const numeric::Rng root(seed);
  std::vector<char> held(corpus.size(), 0);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    numeric::Rng rng = root.split(c);
    rng.shuffle(std::span(members[c]));
    for (std::size_t j = 0; j < take[c]; ++j) held[members[c][j]] = 1;
  }
  std::vector<std::size_t> kept_pos;
  std::vector<std::size_t> held_pos;
  for (std::size_t i = 0; i < corpus.size(); ++i) (held[i] ? held_pos : kept_pos).push_back(i);
  return {corpus.subset(kept_pos), corpus.subset(held_pos)};
}

}  // namespace

void SplitSpec::validate() const {
  check_fraction(test_fraction, "test fraction");
  check_fraction(dev_fraction, "dev fraction");
  require(folds >= 2, "fold count must be at least 2");
}

std::size_t held_out_count(std::size_t count, double fraction) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(count) * fraction + 0.5));
}

Split stratified_split(const LabeledCorpus& corpus, double test_fraction, std::uint64_t seed) {
  check_fraction(test_fraction, "test fraction");
  return holdout(corpus, test_fraction, seed);
}

Split dev_split(const LabeledCorpus& train, double dev_fraction, std::uint64_t seed) {
  check_fraction(dev_fraction, "dev fraction");
  return holdout(train, dev_fraction, seed);
}

std::vector<Split> kfold(const LabeledCorpus& corpus, std::size_t folds, std::uint64_t seed) {
  require(folds >= 2, "fold count must be at least 2");
  ClassMembers members = members_by_class(corpus);
  const numeric::Rng root(seed);
  std::vector<std::size_t> fold_of(corpus.size(), 0);
  std::size_t deal = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (members[c].empty()) continue;
    if (members[c].size() < folds) {
      throw_error(ErrorKind::kInvalidArgument, "class " + std::string(sentiment_name(sentiment_at(c))) +
                                                   " has fewer items than folds");
    }
    numeric::Rng rng = root.split(c);
    rng.shuffle(std::span(members[c]));
    for (std::size_t idx : members[c]) fold_of[idx] = deal++ % folds;
  }
  std::vector<Split> out;
  out.reserve(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_pos;
    std::vector<std::size_t> valid_pos;
    for (std::size_t i = 0; i < corpus.size(); ++i) (fold_of[i] == f ? valid_pos : train_pos).push_back(i);
    out.push_back({corpus.subset(train_pos), corpus.subset(valid_pos)});
  }
  return out;
}

}  // namespace sentikit::corpus
