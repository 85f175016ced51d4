#ifndef SENC_CSV_HPP
#define SENC_CSV_HPP

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace senc::csv {

// Reads a two-column numeric CSV with the given header line (e.g. "t,value").
// Throws MalformedCsv on a bad header, ragged row, or non-numeric cell; the
// message names the offending 1-based line number. An empty data section is
// returned as an empty vector, the caller decides whether that is an error.
std::vector<std::array<double, 2>> read_two_column(const std::filesystem::path& path,
                                                   std::string_view expected_header);

// Writes rows as CSV with LF line endings. Values are formatted with
// max_digits10 precision when decimals < 0, otherwise with a fixed number of
// decimals (report tables use 6).
void write_rows(const std::filesystem::path& path, std::string_view header,
                const std::vector<std::vector<double>>& rows, int decimals = -1);

std::string format_value(double v, int decimals);

// Strict full-token double parse; returns false on any trailing garbage.
bool parse_double(std::string_view token, double& out);

std::vector<std::string> split(std::string_view line, char sep);

}  // namespace senc::csv

#endif
