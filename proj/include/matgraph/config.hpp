#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace matgraph {

using KeyValues = std::map<std::string, std::string>;

/// Flat `key = value` text; `#` starts a comment, blank lines are ignored.
/// Throws FormatError on a line without `=` or a repeated key.
KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::filesystem::path& path);

std::vector<std::string> split_list(const std::string& text, char sep = ',');
std::string trim(const std::string& s);

double parse_double(const std::string& key, const std::string& value);
std::size_t parse_count(const std::string& key, const std::string& value);

/// Writes through a temporary sibling and renames it into place.
/// Throws InvalidInput when the destination is not writable.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace matgraph
