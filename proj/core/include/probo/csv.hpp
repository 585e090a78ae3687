#pragma once

#include <istream>
#include <string>
#include <vector>

namespace probo {

// Minimal comma-separated reader: no quoting, surrounding whitespace trimmed,
// blank lines skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in, bool has_header = true);
CsvTable read_csv_file(const std::string& path, bool has_header = true);

std::vector<std::string> split_csv_line(const std::string& line);

// Strict numeric conversion; throws InvalidArgument naming `context`.
double parse_csv_number(const std::string& cell, const std::string& context);

}  // namespace probo
