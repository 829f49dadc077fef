#include "table.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cli {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

OutputTable::OutputTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void OutputTable::add_row(const std::vector<double>& row) {
  if (row.size() != columns_.size())
    throw std::logic_error("row width does not match column count");
  rows_.push_back(row);
}

void OutputTable::write_csv(std::ostream& out) const {
  for (size_t i = 0; i < columns_.size(); ++i)
    out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_g17(row[i]);
    out << '\n';
  }
}

}  // namespace cli
