#pragma once

#include <array>
#include <string_view>

namespace mvndiv::testing {

struct VersionCase {
  std::string_view lhs;
  std::string_view rhs;
  int expected;  // -1 less, 0 equal, 1 greater
};

// Pinned comparisons. Cases 13-33 follow the qualifier ladder used by
// Maven's own comparator tests ("1-alpha2snapshot" ... "1-123").
inline constexpr std::array<VersionCase, 50> kVersionVector{{
    {"1.2.0", "2.0.0", -1},
    {"1.0.0", "1.0.0", 0},
    {"1.0-alpha", "1.0", -1},
    {"1", "1.0", 0},
    {"1.0", "1.0.0", 0},
    {"1-ga", "1", 0},
    {"1.0-final", "1", 0},
    {"1.0-RELEASE", "1.0", 0},
    {"1.0-cr1", "1.0-rc1", 0},
    {"1.0a1", "1.0-alpha-1", 0},
    {"1.0b2", "1.0-beta-2", 0},
    {"1.0m3", "1.0-milestone-3", 0},
    {"1-alpha2snapshot", "1-alpha2", -1},
    {"1-alpha2", "1-alpha-123", -1},
    {"1-alpha-123", "1-beta-2", -1},
    {"1-beta-2", "1-beta123", -1},
    {"1-beta123", "1-m2", -1},
    {"1-m2", "1-m11", -1},
    {"1-m11", "1-rc", -1},
    {"1-rc", "1-cr2", -1},
    {"1-cr2", "1-rc123", -1},
    {"1-rc123", "1-SNAPSHOT", -1},
    {"1-SNAPSHOT", "1", -1},
    {"1", "1-sp", -1},
    {"1-sp", "1-sp2", -1},
    {"1-sp2", "1-sp123", -1},
    {"1-sp123", "1-abc", -1},
    {"1-abc", "1-def", -1},
    {"1-def", "1-pom-1", -1},
    {"1-pom-1", "1-1-snapshot", -1},
    {"1-1-snapshot", "1-1", -1},
    {"1-1", "1-2", -1},
    {"1-2", "1-123", -1},
    {"2.0", "2.0.1", -1},
    {"2.0.1", "2.1", -1},
    {"2.9", "2.10", -1},
    {"1.0.0-SNAPSHOT", "1.0.0", -1},
    {"1.0-rc1", "1.0-SNAPSHOT", -1},
    {"1.0.1", "1.0-sp1", 1},
    {"1.0.0.0.1", "1", 1},
    {"01.002", "1.2", 0},
    {"1.0-ALPHA1", "1.0-alpha-1", 0},
    {"1.0-Beta", "1.0-beta", 0},
    {"1.0-alpha", "1.0-beta", -1},
    {"1.0-milestone", "1.0-rc", -1},
    {"3.4.7", "3.4.10", -1},
    {"1.0-xyz", "1.0-sp", 1},
    {"1.0-abc", "1.0-abd", -1},
    {"2.0.0", "2.0.0-rc2", 1},
    {"20180906", "9.9.9", 1},
}};

}  // namespace mvndiv::testing
