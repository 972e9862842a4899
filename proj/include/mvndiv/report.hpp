#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace mvndiv {

/// Empty cells are written as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class ReportFormat { Csv, Json };

/// Fixed notation with 6 fractional digits, independent of the locale.
std::string format_fixed(double value);

void write_csv(const Table& table, std::ostream& out);
/// An array with one object per row, keys in column order.
void write_json(const Table& table, std::ostream& out);
void write_table(const Table& table, ReportFormat format, std::ostream& out);

/// Writes the table to `path`; throws DataError naming the path on I/O failure.
void write_report(const Table& table, ReportFormat format, const std::filesystem::path& path);

}  // namespace mvndiv
