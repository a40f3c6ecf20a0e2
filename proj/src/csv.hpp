#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace greyfc::csv {

// Series CSV: one value per row, optionally preceded by a label column,
// optionally starting with a header row. Decimal points, no thousands
// separators.
struct ParsedSeries {
  std::vector<double> values;
  std::vector<std::string> labels;  // empty when the input has no labels
  bool had_header = false;
};

ParsedSeries parse_series(std::string_view text);

ParsedSeries read_series_file(const std::string &path);

}  // namespace greyfc::csv
