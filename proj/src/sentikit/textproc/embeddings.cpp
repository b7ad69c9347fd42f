#include "sentikit/textproc/embeddings.hpp"

#include <charconv>
#include <unordered_map>

#include "sentikit/common/error.hpp"
#include "sentikit/common/json_io.hpp"
#include "sentikit/numeric/rng.hpp"

namespace sentikit::textproc {

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_integer(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

void fill_missing(numeric::Tensor& rows, const std::vector<char>& filled, std::uint64_t seed) {
  numeric::Rng rng(seed);
  const std::size_t dim = rows.dim(1);
  for (std::size_t r = 0; r < rows.dim(0); ++r) {
    if (r == kPadId || filled[r]) continue;
    for (std::size_t k = 0; k < dim; ++k) rows.at(r, k) = rng.uniform(-kEmbeddingInitRange, kEmbeddingInitRange);
  }
}

}  // namespace

EmbeddingTable random_embeddings(const Vocabulary& vocab, std::size_t dim, std::uint64_t seed) {
  require(dim >= 1, "embedding dimension must be positive");
  EmbeddingTable table{numeric::Tensor({vocab.size(), dim}), 0};
  fill_missing(table.rows, std::vector<char>(vocab.size(), 0), seed);
  return table;
}

EmbeddingTable parse_embeddings(const std::string& contents, const Vocabulary& vocab, std::uint64_t seed,
                                std::size_t fallback_dim) {
  struct Row {
    std::string_view token;
    std::vector<double> values;
  };
  std::vector<Row> parsed;
  std::size_t dim = 0;
  const auto lines = split_lines(contents);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto fields = split_spaces(lines[n]);
    if (fields.empty()) continue;
    const std::string where = "embeddings line " + std::to_string(n + 1) + ": ";
    if (parsed.empty() && dim == 0 && fields.size() == 2 && is_integer(fields[0]) && is_integer(fields[1])) {
      continue;  // "count dim" header
    }
    if (fields.size() < 2) throw_error(ErrorKind::kParse, where + "expected a token and at least one value");
    Row row{fields[0], {}};
    row.values.resize(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      if (!parse_double(fields[k], row.values[k - 1])) {
        throw_error(ErrorKind::kParse, where + "unparseable value \"" + std::string(fields[k]) + "\"");
      }
    }
    if (dim == 0) dim = row.values.size();
    if (row.values.size() != dim) {
      throw_error(ErrorKind::kParse, where + "dimension " + std::to_string(row.values.size()) +
                                         " differs from " + std::to_string(dim));
    }
    parsed.push_back(std::move(row));
  }
  if (dim == 0) dim = fallback_dim;
  EmbeddingTable table{numeric::Tensor({vocab.size(), dim}), 0};
  std::vector<char> filled(vocab.size(), 0);
  for (const Row& row : parsed) {
    auto id = vocab.find(std::string(row.token));
    if (!id || *id == kPadId || *id == kUnkId || filled[*id]) continue;
    for (std::size_t k = 0; k < dim; ++k) table.rows.at(*id, k) = row.values[k];
    filled[*id] = 1;
    ++table.pretrained_rows;
  }
  fill_missing(table.rows, filled, seed);
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path, const Vocabulary& vocab, std::uint64_t seed,
                               std::size_t fallback_dim) {
  return parse_embeddings(read_text_file(path), vocab, seed, fallback_dim);
}

}  // namespace sentikit::textproc
