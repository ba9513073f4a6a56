#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace radex::csv {

/// Reads a whole CSV file into rows of fields. Understands double-quoted
/// fields with "" escapes and CRLF line endings; trailing empty line ignored.
std::vector<std::vector<std::string>> read_file(
    const std::filesystem::path& path);

std::vector<std::vector<std::string>> parse(std::string_view text);

/// Writes one row, quoting fields only when they contain , " or newline.
void write_row(std::ostream& out, std::span<const std::string> fields);

/// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);

/// Strict full-field parse; throws BadFormat on trailing junk or empty.
double parse_double(std::string_view field);

long long parse_int(std::string_view field);

}  // namespace radex::csv
