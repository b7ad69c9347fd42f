#pragma once

#include <cstdint>
#include <vector>

#include "sentikit/textproc/vocabulary.hpp"

namespace sentikit::textproc {

/// Three valid width-7 convolutions shrink the sequence by 18.
inline constexpr std::size_t kMinSequenceLength = 19;
inline constexpr std::size_t kDefaultMaxLength = 64;

struct EncodedSequence {
  std::vector<std::uint32_t> ids;  // length max_len, PAD past true_length
  std::size_t true_length = 0;
  friend bool operator==(const EncodedSequence&, const EncodedSequence&) = default;
};

/// Maps tokens to ids (OOV -> UNK), keeps the first max_len, pads the tail.
EncodedSequence encode_sequence(const Tokens& doc, const Vocabulary& vocab,
                                std::size_t max_len = kDefaultMaxLength);

}  // namespace sentikit::textproc
