#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace picg {

/// %.17g: the shortest fixed width that round-trips every double.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column, or -1.
  int column(const std::string& name) const;
};

/// Plain comma-separated table with a header row; no quoting.
CsvTable read_csv(std::istream& in);

}  // namespace picg
