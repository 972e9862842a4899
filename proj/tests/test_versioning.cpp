#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mvndiv/errors.hpp"
#include "mvndiv/graph.hpp"
#include "mvndiv/versioning.hpp"
#include "support/version_vector.hpp"

using namespace mvndiv;

namespace {

std::vector<VersionToken> toks(std::initializer_list<std::pair<bool, const char*>> spec) {
  std::vector<VersionToken> out;
  for (auto [numeric, value] : spec) out.push_back({numeric ? TokenKind::Numeric : TokenKind::Qualifier, value});
  return out;
}

int sign(std::strong_ordering o) { return o < 0 ? -1 : o > 0 ? 1 : 0; }

std::string random_version(std::mt19937_64& rng) {
  static const std::vector<std::string> atoms{"0",    "1",  "2",  "10",    "007",      "alpha", "a1", "beta",
                                              "b2",   "m3", "rc", "cr",    "snapshot", "ga",    "final", "sp",
                                              "xyz",  "abc", "RC1", "Final", "20180906"};
  static const std::vector<std::string> seps{".", "-", ""};
  std::uniform_int_distribution<std::size_t> len(1, 5), atom(0, atoms.size() - 1), sep(0, seps.size() - 1);
  std::string s = std::to_string(rng() % 4);
  for (std::size_t i = 0, n = len(rng); i < n; ++i) s += seps[sep(rng)] + atoms[atom(rng)];
  return s;
}

}  // namespace

TEST_CASE("parse_version tokenizes on separators and transitions", "[versioning]") {
  CHECK(parse_version("2.0.0").tokens() == toks({{true, "2"}, {true, "0"}, {true, "0"}}));
  CHECK(parse_version("1.0-alpha").tokens() == toks({{true, "1"}, {true, "0"}, {false, "alpha"}}));
  CHECK(parse_version("1.0RC1").tokens() == toks({{true, "1"}, {true, "0"}, {false, "rc"}, {true, "1"}}));
  CHECK(parse_version("1.0a1").tokens() == toks({{true, "1"}, {true, "0"}, {false, "alpha"}, {true, "1"}}));
  // "a" not followed by a digit is an ordinary qualifier
  CHECK(parse_version("1.0-a").tokens() == toks({{true, "1"}, {true, "0"}, {false, "a"}}));
  CHECK(parse_version("007").tokens() == toks({{true, "7"}}));
}

TEST_CASE("version component of a coordinate", "[versioning]") {
  auto c = Coordinate::parse("org.neo4j:neo4j-io:3.4.7");
  CHECK(c.group == "org.neo4j");
  CHECK(c.artifact == "neo4j-io");
  CHECK(parse_version(c.version).tokens() == toks({{true, "3"}, {true, "4"}, {true, "7"}}));
}

TEST_CASE("canonical form drops release markers and insignificant zeros", "[versioning]") {
  CHECK(parse_version("1.0.0").canonical() == "1");
  CHECK(parse_version("1.0-alpha").canonical() == "1.alpha");
  CHECK(parse_version("1.0.1").canonical() == "1.0.1");
  CHECK(parse_version("2.0-final").canonical() == "2");
  CHECK(parse_version("1.0-cr2").canonical() == "1.rc.2");
}

TEST_CASE("parse_version rejects empty input", "[versioning]") {
  CHECK_THROWS_AS(parse_version(""), ParseError);
}

TEST_CASE("pinned comparison vector", "[versioning]") {
  for (const auto& c : testing::kVersionVector) {
    INFO(c.lhs << " vs " << c.rhs);
    CHECK(sign(compare_versions(c.lhs, c.rhs)) == c.expected);
    CHECK(sign(compare_versions(c.rhs, c.lhs)) == -c.expected);
  }
}

TEST_CASE("version comparison is a total order", "[versioning][property]") {
  std::mt19937_64 rng(20180906);
  std::vector<VersionKey> keys;
  for (int i = 0; i < 120; ++i) keys.push_back(parse_version(random_version(rng)));

  for (const auto& a : keys) {
    CHECK((a <=> a) == 0);
    for (const auto& b : keys) {
      // antisymmetry
      REQUIRE(sign(a <=> b) == -sign(b <=> a));
      // equality agrees with the canonical tokens
      REQUIRE(((a <=> b) == 0) == (a.canonical_tokens() == b.canonical_tokens()));
    }
  }
  for (const auto& a : keys)
    for (const auto& b : keys)
      for (const auto& c : keys) {
        if ((a <=> b) <= 0 && (b <=> c) <= 0) {
          INFO(a.raw() << " <= " << b.raw() << " <= " << c.raw());
          REQUIRE((a <=> c) <= 0);
        }
      }
}

TEST_CASE("numeric dotted versions order like integer tuples", "[versioning][property]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 4), part(0, 12);
  for (int i = 0; i < 500; ++i) {
    std::vector<int> x(len(rng)), y(len(rng));
    for (auto& v : x) v = part(rng);
    for (auto& v : y) v = part(rng);
    auto render = [](const std::vector<int>& t) {
      std::string s;
      for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "." : "") + std::to_string(t[k]);
      return s;
    };
    // Pad with zeros: "1.2" and "1.2.0" are the same version.
    auto px = x, py = y;
    px.resize(4, 0);
    py.resize(4, 0);
    INFO(render(x) << " vs " << render(y));
    CHECK(sign(compare_versions(render(x), render(y))) == sign(px <=> py));
  }
}

TEST_CASE("release dates", "[versioning]") {
  CHECK(ReleaseDate::parse("2011-09-12") < ReleaseDate::parse("2015-03-30"));
  CHECK(ReleaseDate::parse("2018-09-06").iso() == "2018-09-06");
  CHECK(ReleaseDate::parse("1970-01-02").days() == 1);
  CHECK_THROWS_AS(ReleaseDate::parse("12-09-2011"), ParseError);
  CHECK_THROWS_AS(ReleaseDate::parse("2011-02-30"), ParseError);
  CHECK_THROWS_AS(ReleaseDate::parse("2011-1-01"), ParseError);
}
