#pragma once

#include <span>

#include "sentikit/corpus/sentiment.hpp"

namespace sentikit::agreement {

/// Cohen's kappa for one class after one-vs-rest binarization of two aligned
/// label sequences: (p_o - p_e) / (1 - p_e), with p_e summed over the two
/// binary outcomes. Perfect observed agreement returns exactly 1.0, which
/// also covers the 0/0 case where both raters are constant.
double cohen_kappa_binary(std::span<const Sentiment> labels_a, std::span<const Sentiment> labels_b,
                          Sentiment target);

}  // namespace sentikit::agreement
