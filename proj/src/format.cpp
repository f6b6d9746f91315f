#include "vrei/format.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "vrei/errors.hpp"

namespace vrei {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw DomainError("row width does not match the header");
  rows_.push_back(cells);
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(cells);
}

void CsvTable::write(std::ostream& out, const ConfigEcho& echo) const {
  for (const auto& [key, value] : echo) out << "# " << key << '=' << value << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
}

std::size_t CsvData::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw DomainError("CSV has no column '" + name + "'");
}

CsvData read_csv(std::istream& in) {
  CsvData data;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) data.echo[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    if (data.columns.empty()) {
      data.columns = split(line);
      continue;
    }
    auto cells = split(line);
    if (cells.size() != data.columns.size()) throw DomainError("ragged CSV row: " + line);
    data.rows.push_back(std::move(cells));
  }
  if (data.columns.empty()) throw DomainError("CSV has no header row");
  return data;
}

}  // namespace vrei
