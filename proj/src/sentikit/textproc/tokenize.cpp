#include "sentikit/textproc/tokenize.hpp"

#include <cstdint>

namespace sentikit::textproc {

namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;
};

CodePoint decode(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t k) -> int {
    if (pos + k >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[pos + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0) {
    const int c1 = cont(1);
    if (c1 >= 0) return {static_cast<char32_t>(((b0 & 0x1F) << 6) | c1), 2};
  } else if ((b0 & 0xF0) == 0xE0) {
    const int c1 = cont(1);
    const int c2 = cont(2);
    if (c1 >= 0 && c2 >= 0) return {static_cast<char32_t>(((b0 & 0x0F) << 12) | (c1 << 6) | c2), 3};
  } else if ((b0 & 0xF8) == 0xF0) {
    const int c1 = cont(1);
    const int c2 = cont(2);
    const int c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0) {
      return {static_cast<char32_t>(((b0 & 0x07) << 18) | (c1 << 12) | (c2 << 6) | c3), 4};
    }
  }
  return {0xFFFD, 1};
}

bool is_space(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
         c == 0x3000;
}

bool is_punct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
           (c >= 0x7B && c <= 0x7E);
  }
  return c == 0xA1 || c == 0xAB || c == 0xBB || c == 0xBF || (c >= 0x2010 && c <= 0x2027) ||
         (c >= 0x2030 && c <= 0x205E) || (c >= 0x3001 && c <= 0x3003);
}

void flush_piece(std::string_view text, const std::vector<CodePoint>& cps, std::size_t start_byte,
                 Tokens& out) {
  std::size_t lo = 0;
  std::size_t hi = cps.size();
  while (lo < hi && is_punct(cps[lo].value)) ++lo;
  while (hi > lo && is_punct(cps[hi - 1].value)) --hi;
  if (lo == hi) return;
  std::size_t begin = start_byte;
  for (std::size_t i = 0; i < lo; ++i) begin += cps[i].length;
  std::size_t length = 0;
  for (std::size_t i = lo; i < hi; ++i) length += cps[i].length;
  std::string token(text.substr(begin, length));
  for (char& ch : token) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  out.push_back(std::move(token));
}

}  // namespace

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::vector<CodePoint> piece;
  std::size_t piece_start = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = decode(text, pos);
    if (is_space(cp.value)) {
      if (!piece.empty()) flush_piece(text, piece, piece_start, out);
      piece.clear();
      pos += cp.length;
      piece_start = pos;
      continue;
    }
    piece.push_back(cp);
    pos += cp.length;
  }
  if (!piece.empty()) flush_piece(text, piece, piece_start, out);
  return out;
}

}  // namespace sentikit::textproc
