#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "mvndiv/graph.hpp"

namespace mvndiv {

enum class InputFormat { Ndjson, Csv };

/// NDJSON records, one per line:
///   {"kind":"artifact","g":"...","a":"...","v":"...","released":"YYYY-MM-DD"}
///   {"kind":"dep","from":"g:a:v","to":"g:a:v","scope":"compile"}
/// Blank lines are ignored. Throws DataError with the offending line number.
void read_ndjson(std::istream& in, GraphBuilder& builder);

/// CSV with a header row naming the columns kind,g,a,v,released,from,to,scope
/// (any order; scope may be omitted). Fields may be double-quoted.
void read_csv(std::istream& in, GraphBuilder& builder);

/// Picks the reader from the file extension: ".csv" is CSV, anything else NDJSON.
InputFormat detect_format(const std::filesystem::path& path);

void read_file(const std::filesystem::path& path, GraphBuilder& builder);

struct IngestResult {
  DependencyGraph graph;
  std::vector<std::string> warnings;
};

/// Reads every file (records may reference each other across files) and builds the graph.
IngestResult ingest_files(const std::vector<std::filesystem::path>& paths, const GraphBuilder::Options& options);

/// Convenience for in-memory NDJSON text.
IngestResult ingest_ndjson(const std::string& text, const GraphBuilder::Options& options);

}  // namespace mvndiv
