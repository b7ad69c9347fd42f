#pragma once

#include <cstdint>
#include <filesystem>

#include "sentikit/numeric/tensor.hpp"
#include "sentikit/textproc/vocabulary.hpp"

namespace sentikit::textproc {

inline constexpr std::size_t kDefaultEmbeddingDim = 100;
inline constexpr double kEmbeddingInitRange = 0.05;

/// Vocabulary-aligned embedding rows, shape (vocab size, dim). Row PAD is
/// zero.
struct EmbeddingTable {
  numeric::Tensor rows;
  std::size_t pretrained_rows = 0;  // rows copied from a file

  std::size_t dimension() const { return rows.dim(1); }
};

/// Every non-PAD row drawn uniformly from [-0.05, 0.05) in index order.
EmbeddingTable random_embeddings(const Vocabulary& vocab, std::size_t dim, std::uint64_t seed);

/// Reads `token v1 ... vd` lines (an optional "count dim" header is
/// detected). Rows for vocabulary tokens found in the text are copied;
/// the rest, including UNK, are drawn from the seeded generator in index
/// order. Text without any vectors falls back to `fallback_dim`.
EmbeddingTable parse_embeddings(const std::string& contents, const Vocabulary& vocab, std::uint64_t seed,
                                std::size_t fallback_dim = kDefaultEmbeddingDim);
EmbeddingTable load_embeddings(const std::filesystem::path& path, const Vocabulary& vocab, std::uint64_t seed,
                               std::size_t fallback_dim = kDefaultEmbeddingDim);

}  // namespace sentikit::textproc
