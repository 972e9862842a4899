#include "mvndiv/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "mvndiv/errors.hpp"

namespace mvndiv {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

struct CsvCell {
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(const std::string& s) const { return csv_field(s); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_fixed(v); }
};

struct JsonCell {
  std::string operator()(std::monostate) const { return "null"; }
  std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return std::isfinite(v) ? format_fixed(v) : "null"; }
};

}  // namespace

std::string format_fixed(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // no "-0.000000"
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
  if (ec != std::errc{}) return "nan";
  std::string s(buf, end);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  out << "[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n  {" : "\n  {");
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? ", " : "") << nlohmann::json(table.columns.at(i)).dump() << ": " << std::visit(JsonCell{}, row[i]);
    }
    out << "}";
  }
  out << (table.rows.empty() ? "]\n" : "\n]\n");
}

void write_table(const Table& table, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Csv)
    write_csv(table, out);
  else
    write_json(table, out);
}

void write_report(const Table& table, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_table(table, format, out);
  out.flush();
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace mvndiv
