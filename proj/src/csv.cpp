#include "csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace greyfc::csv {
namespace {

std::string trimmed(std::string_view field) {
  std::size_t begin = 0;
  std::size_t end = field.size();
  while (begin < end && (field[begin] == ' ' || field[begin] == '\t' ||
                         field[begin] == '\r')) {
    ++begin;
  }
  while (end > begin && (field[end - 1] == ' ' || field[end - 1] == '\t' ||
                         field[end - 1] == '\r')) {
    --end;
  }
  return std::string(field.substr(begin, end - begin));
}

bool parse_number(const std::string &field, double &out) {
  if (field.empty()) return false;
  const char *begin = field.c_str();
  char *end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + field.size();
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trimmed(line.substr(start)));
      break;
    }
    fields.push_back(trimmed(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void fail_parse(std::size_t line_no, const std::string &detail) {
  std::ostringstream msg;
  msg << "CSV parse error at line " << line_no << ": " << detail;
  fail(GREYFC_ERR_PARSE, msg.str());
}

}  // namespace

ParsedSeries parse_series(std::string_view text) {
  ParsedSeries out;
  std::size_t line_no = 0;
  std::size_t columns = 0;  // 0 until the first data row fixes the layout
  std::size_t pos = 0;
  bool first_content_row = true;
  while (pos <= text.size()) {
    const std::size_t newline = text.find('\n', pos);
    const std::string_view line =
        newline == std::string_view::npos
            ? text.substr(pos)
            : text.substr(pos, newline - pos);
    pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
    ++line_no;
    if (trimmed(line).empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() > 2) {
      fail_parse(line_no, "expected at most 2 columns, found " +
                              std::to_string(fields.size()));
    }
    double value = 0.0;
    const bool value_ok = parse_number(fields.back(), value);
    if (first_content_row && !value_ok) {
      out.had_header = true;  // header row, layout still open
      first_content_row = false;
      continue;
    }
    first_content_row = false;
    if (!value_ok) {
      fail_parse(line_no, "'" + fields.back() + "' is not a number");
    }
    if (columns == 0) {
      columns = fields.size();
    } else if (fields.size() != columns) {
      fail_parse(line_no, "row has " + std::to_string(fields.size()) +
                              " columns, expected " + std::to_string(columns));
    }
    if (columns == 2) {
      out.labels.push_back(fields.front());
    }
    out.values.push_back(value);
  }
  if (out.values.empty()) {
    fail(GREYFC_ERR_PARSE, "CSV parse error: input contains no data rows");
  }
  return out;
}

ParsedSeries read_series_file(const std::string &path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    fail(GREYFC_ERR_IO, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return parse_series(buffer.str());
}

}  // namespace greyfc::csv
