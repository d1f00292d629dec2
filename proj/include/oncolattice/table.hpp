#ifndef ONCOLATTICE_TABLE_HPP
#define ONCOLATTICE_TABLE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace oncolattice {

/// Rectangular numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const;  // throws std::out_of_range
  std::vector<double> column(const std::string& name) const;

  friend bool operator==(const Table&, const Table&) = default;
};

/// Shortest round-trippable text for a double: 17 significant digits, no locale.
std::string format_double(double v);

std::string to_csv(const Table& t);
Table parse_csv(const std::string& text);

void write_csv(const Table& t, const std::string& path);
Table read_csv(const std::string& path);

}  // namespace oncolattice

#endif  // ONCOLATTICE_TABLE_HPP
