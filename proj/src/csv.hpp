#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tspd::csv {

/// Splits CSV text into records; double quotes protect commas and newlines.
std::vector<std::vector<std::string>> parse(std::string_view text);

std::string quote(std::string_view field);

std::string trim(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace tspd::csv
