#include "lrr/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "lrr/error.hpp"

namespace lrr {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

double parse_double(const std::string& field, std::size_t row, std::size_t col) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw DataError("cannot parse '" + field + "' as a number (row " + std::to_string(row) + ", column " +
                    std::to_string(col) + ")");
  return v;
}

bool is_index(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

CsvData parse_csv(std::istream& in, const CsvOptions& options) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (first && options.header) {
      header = std::move(fields);
    } else {
      rows.push_back(std::move(fields));
    }
    first = false;
  }
  if (rows.empty()) throw DataError("CSV input has no data rows");
  const std::size_t width = options.header ? header.size() : rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != width)
      throw DataError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) + " fields, expected " +
                      std::to_string(width));

  std::optional<std::size_t> label_col;
  if (options.label) {
    const auto& want = *options.label;
    const auto named = std::find(header.begin(), header.end(), want);
    if (named != header.end()) {
      label_col = static_cast<std::size_t>(named - header.begin());
    } else if (is_index(want)) {
      label_col = std::stoul(want);
    } else {
      throw DataError("label column '" + want + "' not found");
    }
    if (*label_col >= width) throw DataError("label column index " + want + " out of range");
  }

  const std::size_t d = width - (label_col ? 1 : 0);
  if (d == 0) throw DataError("CSV input has no feature columns");
  Matrix values(static_cast<Index>(rows.size()), static_cast<Index>(d));
  std::optional<std::vector<int>> labels;
  if (label_col) labels.emplace(rows.size());
  std::vector<std::string> names;
  for (std::size_t c = 0; c < width; ++c) {
    if (label_col && c == *label_col) continue;
    names.push_back(options.header ? header[c] : "x" + std::to_string(c));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Index out = 0;
    for (std::size_t c = 0; c < width; ++c) {
      const double v = parse_double(rows[r][c], r, c);
      if (label_col && c == *label_col) {
        if (v < 0.0 || v != std::floor(v) || v > 2147483647.0)
          throw DataError("label in row " + std::to_string(r) + " is not a non-negative integer");
        (*labels)[r] = static_cast<int>(v);
      } else {
        values(static_cast<Index>(r), out++) = v;
      }
    }
  }
  return CsvData{DataMatrix(std::move(values), std::move(labels)), std::move(names)};
}

CsvData read_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_csv(in, options);
}

}  // namespace lrr
