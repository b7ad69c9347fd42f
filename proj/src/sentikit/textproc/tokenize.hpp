#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sentikit::textproc {

using Tokens = std::vector<std::string>;

/// Lowercases ASCII letters, splits on Unicode whitespace, and strips
/// leading and trailing punctuation (ASCII punctuation plus common Unicode
/// quotes, dashes and ellipses) from each piece. Interior characters,
/// including apostrophes and hyphens, are kept. Invalid UTF-8 bytes are
/// treated as ordinary characters.
Tokens tokenize(std::string_view text);

}  // namespace sentikit::textproc
