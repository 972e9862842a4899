#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mvndiv/cli.hpp"
#include "mvndiv/report.hpp"
#include "support/fixtures.hpp"

using namespace mvndiv;
using namespace mvndiv::testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "mvndiv");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fig1_input() { return data_path("fig1.ndjson").string(); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mvndiv_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("fixed-point formatting", "[report]") {
  CHECK(format_fixed(0.513375) == "0.513375");
  CHECK(format_fixed(1.0) == "1.000000");
  CHECK(format_fixed(-0.0000001) == "0.000000");
  CHECK(format_fixed(100.0 / 3.0) == "33.333333");
}

TEST_CASE("CSV quoting and JSON encoding", "[report]") {
  Table t{"t", {"name", "n", "x", "empty"}, {{std::string("a,\"b\""), std::int64_t{3}, 0.5, std::monostate{}}}};
  std::ostringstream csv, json;
  write_csv(t, csv);
  write_json(t, json);
  CHECK(csv.str() == "name,n,x,empty\n\"a,\"\"b\"\"\",3,0.500000,\n");
  auto j = nlohmann::json::parse(json.str());
  REQUIRE(j.is_array());
  CHECK(j[0]["name"] == "a,\"b\"");
  CHECK(j[0]["n"] == 3);
  CHECK(j[0]["x"].get<double>() == 0.5);
  CHECK(j[0]["empty"].is_null());
}

TEST_CASE("summary on FIG1", "[cli]") {
  auto r = invoke({"--input", fig1_input(), "summary"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out ==
        "status,n_versions,pct_versions,n_libraries,pct_libraries\n"
        "Active,3,33.333333,3,75.000000\n"
        "PassiveNonDormant,1,11.111111,0,0.000000\n"
        "Dormant,5,55.555556,1,25.000000\n"
        "Total,9,100.000000,4,100.000000\n");
}

TEST_CASE("outputs are deterministic and CSV/JSON agree", "[cli]") {
  for (const char* sub : {"stats", "versions", "libraries", "patterns", "hist", "correlate", "summary"}) {
    INFO(sub);
    auto a = invoke({"--input", fig1_input(), sub});
    auto b = invoke({"--input", fig1_input(), sub});
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);

    auto j = invoke({"--input", fig1_input(), "--format", "json", sub});
    REQUIRE(j.code == kExitOk);
    auto doc = nlohmann::json::parse(j.out);
    REQUIRE(doc.is_object());
    // Every CSV data row has a JSON counterpart.
    std::size_t csv_rows = 0;
    std::istringstream in(a.out);
    bool header = true;
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) {
        header = true;
        continue;
      }
      if (!header) ++csv_rows;
      header = false;
    }
    std::size_t json_rows = 0;
    for (const auto& [name, rows] : doc.items()) json_rows += rows.size();
    CHECK(csv_rows == json_rows);
  }
}

TEST_CASE("versions report lists every version", "[cli]") {
  auto r = invoke({"--input", fig1_input(), "--format", "json", "versions"});
  REQUIRE(r.code == kExitOk);
  auto rows = nlohmann::json::parse(r.out)["versions"];
  REQUIRE(rows.size() == 9);
  for (const auto& row : rows) {
    if (row["coordinate"] == "fig1:D:1.0") {
      CHECK(row["pop_v"].get<double>() == Catch::Approx(0.513375));
      CHECK(row["positional_index"].is_null());
    }
    if (row["coordinate"] == "fig1:C:1.0") CHECK(row["lifespan_start"].is_null());
  }
}

TEST_CASE("reports written to a directory", "[cli]") {
  auto dir = scratch("out");
  auto r = invoke({"--input", fig1_input(), "--out", dir.string(), "patterns"});
  REQUIRE(r.code == kExitOk);
  CHECK(std::filesystem::exists(dir / "patterns.csv"));
  CHECK(std::filesystem::exists(dir / "patterns_ending.csv"));
  std::ifstream in(dir / "patterns.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.find("pattern") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV and NDJSON inputs give identical reports", "[cli]") {
  auto a = invoke({"--input", fig1_input(), "libraries"});
  auto b = invoke({"--input", data_path("fig1.csv").string(), "libraries"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(invoke({"summary"}).code == kExitUsage);
  CHECK(invoke({"--input", fig1_input()}).code == kExitUsage);
  CHECK(invoke({"--input", fig1_input(), "--damping", "1.5", "summary"}).code == kExitUsage);
  CHECK(invoke({"--input", fig1_input(), "--snapshot", "yesterday", "summary"}).code == kExitUsage);
  CHECK(invoke({"--input", fig1_input(), "--bins", "0", "hist"}).code == kExitUsage);
  CHECK(invoke({"--input", fig1_input(), "--format", "xml", "summary"}).code == kExitUsage);
  CHECK(invoke({"--input", "/nonexistent/input.ndjson", "summary"}).code == kExitData);
  CHECK(invoke({"--input", fig1_input(), "--snapshot", "2019-01-01", "summary"}).code == kExitData);

  auto dir = scratch("cycle");
  std::ofstream(dir / "cycle.ndjson") << R"({"kind":"artifact","g":"g","a":"u","v":"1","released":"2020-01-01"})" "\n"
                                         R"({"kind":"artifact","g":"g","a":"v","v":"1","released":"2020-01-01"})" "\n"
                                         R"({"kind":"artifact","g":"g","a":"w","v":"1","released":"2020-01-01"})" "\n"
                                         R"({"kind":"dep","from":"g:u:1","to":"g:v:1"})" "\n"
                                         R"({"kind":"dep","from":"g:v:1","to":"g:u:1"})" "\n"
                                         R"({"kind":"dep","from":"g:u:1","to":"g:w:1"})" "\n"
                                         R"({"kind":"dep","from":"g:w:1","to":"g:u:1"})" "\n";
  auto cyc = (dir / "cycle.ndjson").string();
  auto r = invoke({"--input", cyc, "versions"});
  CHECK(r.code == kExitConvergence);
  CHECK(r.err.find("normalized") != std::string::npos);
  CHECK(invoke({"--input", cyc, "--mode", "normalized", "versions"}).code == kExitOk);
  std::filesystem::remove_all(dir);
}

TEST_CASE("stats on an empty input with an explicit snapshot", "[cli]") {
  auto dir = scratch("empty");
  std::ofstream(dir / "empty.ndjson") << "\n";
  auto path = (dir / "empty.ndjson").string();
  CHECK(invoke({"--input", path, "stats"}).code == kExitData);
  auto r = invoke({"--input", path, "--snapshot", "2018-09-06", "stats"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("2018-09-06") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("study subject filter on FIG1 leaves no libraries", "[cli]") {
  auto r = invoke({"--input", fig1_input(), "--study-subjects", "libraries"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("fig1:") == std::string::npos);
  auto relaxed = invoke({"--input", fig1_input(), "--study-subjects", "--min-versions", "2", "libraries"});
  CHECK(relaxed.out.find("fig1:A") != std::string::npos);
  CHECK(relaxed.out.find("fig1:D") == std::string::npos);
}
