#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lrr/kernels.hpp"

namespace lrr {

struct CsvOptions {
  bool header = false;
  /// Label column, by header name or by 0-based index.
  std::optional<std::string> label;
};

struct CsvData {
  DataMatrix data;
  /// Names of the feature columns (header names, or "x<column>" without a header).
  std::vector<std::string> feature_names;
};

/// Comma-separated samples, one per row. Every non-label column is parsed as
/// a 64-bit float; the label column must hold non-negative integers.
/// Throws DataError on malformed content.
CsvData parse_csv(std::istream& in, const CsvOptions& options);
CsvData read_csv(const std::string& path, const CsvOptions& options);

}  // namespace lrr
