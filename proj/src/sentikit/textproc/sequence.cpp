#include "sentikit/textproc/sequence.hpp"

#include <algorithm>

#include "sentikit/common/error.hpp"

namespace sentikit::textproc {

EncodedSequence encode_sequence(const Tokens& doc, const Vocabulary& vocab, std::size_t max_len) {
  require(max_len >= kMinSequenceLength,
          "max_len must be at least " + std::to_string(kMinSequenceLength));
  EncodedSequence seq;
  seq.ids.assign(max_len, kPadId);
  seq.true_length = std::min(doc.size(), max_len);
  for (std::size_t i = 0; i < seq.true_length; ++i) seq.ids[i] = vocab.find(doc[i]).value_or(kUnkId);
  return seq;
}

}  // namespace sentikit::textproc
