#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace sentikit {

using Json = nlohmann::json;

/// Canonical serialization: sorted keys (nlohmann's default object order),
/// no whitespace, shortest round-trip doubles. Used for every file the
/// toolkit writes so reruns are byte-identical.
std::string canonical_dump(const Json& value);

std::string read_text_file(const std::filesystem::path& path);

/// Writes via a temporary sibling and rename, so readers never observe a
/// partially written file.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Splits into lines, dropping a trailing '\r' from each. A final empty line
/// after the last newline is not reported.
std::vector<std::string> split_lines(const std::string& text);

}  // namespace sentikit
