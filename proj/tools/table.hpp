#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cli {

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_g17(double v);

/// Numeric table with named columns, written as CSV: comma separated,
/// header row, '.' decimal point, '\n' line ends.
class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns);

  /// row.size() must equal the column count.
  void add_row(const std::vector<double>& row);

  void write_csv(std::ostream& out) const;

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace cli
