#pragma once

// CSV output with a single header line and 17 significant digits, plus
// the grid syntax used on the command line.

#include <string>
#include <vector>

namespace semifrac::cli {

/// "%.17g"; non-finite values print as nan / inf / -inf.
std::string format_double(double v);

class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> columns);

  /// Cells are pre-formatted; the count must match the header.
  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);

  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct Grid {
  double min = 0.0;
  double max = 0.0;
  int n = 0;
  bool log = false;

  std::vector<double> points() const;
};

/// "MIN:MAX:N" (linear) or "log:MIN:MAX:N" (geometric, MIN > 0). A bare
/// number is a one-point grid. Throws std::invalid_argument.
Grid parse_grid(const std::string& text);
/// "A:B" inclusive integer range with A ≤ B.
std::pair<int, int> parse_int_range(const std::string& text);

}  // namespace semifrac::cli
