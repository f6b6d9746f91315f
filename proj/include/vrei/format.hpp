#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace vrei {

// 17 significant digits, "inf" / "-inf" / "nan" for non-finite values.
std::string format_double(double x);

using ConfigEcho = std::map<std::string, std::string>;

// CSV with a "# key=value" header per resolved parameter (sorted), a column
// row and data rows, all LF-terminated.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<std::string>& cells);
  void add_row(const std::vector<double>& values);
  std::size_t rows() const noexcept { return rows_.size(); }

  void write(std::ostream& out, const ConfigEcho& echo) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct CsvData {
  ConfigEcho echo;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws DomainError if absent
};

CsvData read_csv(std::istream& in);

}  // namespace vrei
