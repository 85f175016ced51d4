#include "senc/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "senc/errors.hpp"

namespace senc::csv {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view token, double& out) {
  // trim surrounding spaces
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
    token.remove_suffix(1);
  if (token.empty()) return false;
  std::string buf(token);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE) return false;
  out = v;
  return true;
}

std::vector<std::array<double, 2>> read_two_column(const std::filesystem::path& path,
                                                   std::string_view expected_header) {
  std::ifstream in(path);
  if (!in) throw MalformedCsv(path.string() + ": cannot open file");

  std::string line;
  if (!std::getline(in, line)) throw MalformedCsv(path.string() + ": missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw MalformedCsv(path.string() + ": expected header '" + std::string(expected_header) +
                       "', got '" + line + "'");

  std::vector<std::array<double, 2>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != 2)
      throw MalformedCsv(path.string() + ": line " + std::to_string(line_no) + " has " +
                         std::to_string(cells.size()) + " cells, expected 2");
    double a, b;
    if (!parse_double(cells[0], a) || !parse_double(cells[1], b))
      throw MalformedCsv(path.string() + ": non-numeric cell at line " + std::to_string(line_no));
    rows.push_back({a, b});
  }
  return rows;
}

std::string format_value(double v, int decimals) {
  char buf[64];
  if (decimals < 0) {
    std::snprintf(buf, sizeof buf, "%.*g", std::numeric_limits<double>::max_digits10, v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  }
  return buf;
}

void write_rows(const std::filesystem::path& path, std::string_view header,
                const std::vector<std::vector<double>>& rows, int decimals) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw Error("IoError", "cannot write " + path.string());
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_value(row[i], decimals);
    }
    out << '\n';
  }
}

}  // namespace senc::csv
