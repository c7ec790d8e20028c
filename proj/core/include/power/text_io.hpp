#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace power {

// Whole-file read; throws LoadError.
std::string read_text_file(const std::filesystem::path& path);
// Whole-file write, creating parent directories; throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_whitespace(std::string_view text);
std::string_view trim(std::string_view s);

}  // namespace power
