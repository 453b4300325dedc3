#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace floodrel {

/// Reads a whole file. Throws DataError naming the path if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Splits file contents into lines. A trailing '\r' is stripped from each
/// line; a final newline does not produce an empty last line.
std::vector<std::string> split_lines(std::string_view contents);

/// Splits on every tab; "a\t\tb" yields three fields.
std::vector<std::string_view> split_tabs(std::string_view line);

bool is_valid_utf8(std::string_view text);

/// Writes `contents` to a sibling temp file and renames it over `path`, so
/// readers never observe a partially written file. Parent directories are
/// created as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// 64-bit FNV-1a, stable across platforms.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 14695981039346656037ull);

}  // namespace floodrel
