#include "mvndiv/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mvndiv/errors.hpp"

namespace mvndiv {
namespace {

using nlohmann::json;

std::string required_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(std::string("missing field '") + key + "'", line);
  if (!it->is_string()) throw DataError(std::string("field '") + key + "' must be a string", line);
  auto s = it->get<std::string>();
  if (s.empty()) throw DataError(std::string("field '") + key + "' is empty", line);
  return s;
}

template <typename F>
auto with_line(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const DataError&) {
    throw;
  } catch (const ParseError& e) {
    throw DataError(e.what(), line);
  }
}

void add_record(GraphBuilder& builder, std::string_view kind, const std::string& g, const std::string& a,
                const std::string& v, const std::string& released, const std::string& from, const std::string& to,
                std::optional<std::string> scope, std::size_t line) {
  auto need = [&](const std::string& value, const char* name) {
    if (value.empty()) throw DataError(std::string("missing field '") + name + "'", line);
  };
  if (kind == "artifact") {
    need(g, "g");
    need(a, "a");
    need(v, "v");
    need(released, "released");
    auto date = with_line(line, [&] { return ReleaseDate::parse(released); });
    builder.add_artifact(Coordinate{g, a, v}, date, line);
  } else if (kind == "dep") {
    need(from, "from");
    need(to, "to");
    auto f = with_line(line, [&] { return Coordinate::parse(from); });
    auto t = with_line(line, [&] { return Coordinate::parse(to); });
    builder.add_dependency(std::move(f), std::move(t), std::move(scope), line);
  } else {
    throw DataError("unknown record kind '" + std::string(kind) + "'", line);
  }
}

// Splits one CSV line, honouring double quotes ("" escapes a quote).
std::vector<std::string> split_csv(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          out.back().push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        out.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back().push_back(c);
    }
  }
  if (quoted) throw DataError("unterminated quoted field", lineno);
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

void read_ndjson(std::istream& in, GraphBuilder& builder) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (blank(line)) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(std::string("malformed JSON: ") + e.what(), lineno);
    }
    if (!rec.is_object()) throw DataError("record is not a JSON object", lineno);
    auto kind = required_string(rec, "kind", lineno);
    if (kind == "artifact") {
      add_record(builder, kind, required_string(rec, "g", lineno), required_string(rec, "a", lineno),
                 required_string(rec, "v", lineno), required_string(rec, "released", lineno), "", "", std::nullopt,
                 lineno);
    } else if (kind == "dep") {
      std::optional<std::string> scope;
      if (auto it = rec.find("scope"); it != rec.end() && !it->is_null()) {
        if (!it->is_string()) throw DataError("field 'scope' must be a string", lineno);
        scope = it->get<std::string>();
      }
      add_record(builder, kind, "", "", "", "", required_string(rec, "from", lineno),
                 required_string(rec, "to", lineno), std::move(scope), lineno);
    } else {
      throw DataError("unknown record kind '" + kind + "'", lineno);
    }
  }
}

void read_csv(std::istream& in, GraphBuilder& builder) {
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> column;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (blank(line)) continue;
    auto fields = split_csv(line, lineno);
    if (column.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) column[fields[i]] = i;
      for (const char* required : {"kind", "g", "a", "v", "released", "from", "to"})
        if (!column.contains(required))
          throw DataError(std::string("CSV header lacks column '") + required + "'", lineno);
      continue;
    }
    if (fields.size() > column.size()) throw DataError("too many fields", lineno);
    auto get = [&](const char* name) -> std::string {
      auto it = column.find(name);
      if (it == column.end() || it->second >= fields.size()) return {};
      return fields[it->second];
    };
    std::optional<std::string> scope;
    if (auto s = get("scope"); !s.empty()) scope = std::move(s);
    add_record(builder, get("kind"), get("g"), get("a"), get("v"), get("released"), get("from"), get("to"),
               std::move(scope), lineno);
  }
}

InputFormat detect_format(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? InputFormat::Csv : InputFormat::Ndjson;
}

void read_file(const std::filesystem::path& path, GraphBuilder& builder) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    if (detect_format(path) == InputFormat::Csv)
      read_csv(in, builder);
    else
      read_ndjson(in, builder);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

IngestResult ingest_files(const std::vector<std::filesystem::path>& paths, const GraphBuilder::Options& options) {
  GraphBuilder builder;
  for (const auto& p : paths) read_file(p, builder);
  IngestResult result;
  result.graph = std::move(builder).build(options, &result.warnings);
  return result;
}

IngestResult ingest_ndjson(const std::string& text, const GraphBuilder::Options& options) {
  GraphBuilder builder;
  std::istringstream in(text);
  read_ndjson(in, builder);
  IngestResult result;
  result.graph = std::move(builder).build(options, &result.warnings);
  return result;
}

}  // namespace mvndiv
