#include "semifrac/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace semifrac::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("CsvTable: no columns");
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw std::invalid_argument("CsvTable: row width does not match header");
  rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::vector<double> Grid::points() const {
  std::vector<double> xs;
  xs.reserve(n);
  if (n == 1) {
    xs.push_back(min);
    return xs;
  }
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    xs.push_back(log ? min * std::pow(max / min, f) : min + (max - min) * f);
  }
  xs.back() = max;
  return xs;
}

namespace {

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(v)) {
    throw std::invalid_argument("grid: '" + s + "' is not a valid " + what);
  }
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (!s.empty() && s.back() == ':') parts.emplace_back();
  return parts;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_number(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument("grid: '" + s + "' is not an integer");
  return static_cast<int>(v);
}

}  // namespace

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts = split(text);
  Grid g;
  if (!parts.empty() && parts[0] == "log") {
    g.log = true;
    parts.erase(parts.begin());
  }
  if (parts.size() == 1 && !g.log) {
    g.min = g.max = parse_number(parts[0], "number");
    g.n = 1;
    return g;
  }
  if (parts.size() != 3) throw std::invalid_argument("grid: expected [log:]MIN:MAX:N, got '" + text + "'");
  g.min = parse_number(parts[0], "grid minimum");
  g.max = parse_number(parts[1], "grid maximum");
  g.n = parse_int(parts[2], "point count");
  if (!(g.min < g.max)) throw std::invalid_argument("grid: MIN must be below MAX in '" + text + "'");
  if (g.n < 2) throw std::invalid_argument("grid: N must be at least 2 in '" + text + "'");
  if (g.log && !(g.min > 0.0)) throw std::invalid_argument("grid: log grids need MIN > 0 in '" + text + "'");
  return g;
}

std::pair<int, int> parse_int_range(const std::string& text) {
  const std::vector<std::string> parts = split(text);
  if (parts.size() != 2) throw std::invalid_argument("range: expected A:B, got '" + text + "'");
  const int a = parse_int(parts[0], "range start"), b = parse_int(parts[1], "range end");
  if (a > b) throw std::invalid_argument("range: start exceeds end in '" + text + "'");
  return {a, b};
}

}  // namespace semifrac::cli
