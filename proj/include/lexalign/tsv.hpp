#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lexalign::tsv {

std::vector<std::string> split(std::string_view line, char sep = '\t');
std::string join(const std::vector<std::string>& fields, char sep = '\t');

/// Calls `on_line(line_number, text)` for every line (1-based, CR stripped).
/// Throws DataError if the file cannot be opened.
void for_each_line(const std::filesystem::path& file,
                   const std::function<void(std::size_t, const std::string&)>& on_line);

/// Parses a non-negative decimal integer; returns false on any junk.
bool parse_id(std::string_view text, std::int64_t& out);

}  // namespace lexalign::tsv
