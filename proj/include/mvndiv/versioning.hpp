#pragma once

/**
 * @file versioning.hpp
 * @brief Maven-style version ordering and day-granular release dates.
 *
 * Version strings are split on '.', '-' and letter/digit transitions.
 * Digit runs become numeric tokens, everything else becomes a lowercase
 * qualifier token. Qualifiers order as
 *
 *   alpha < beta < milestone < rc (= cr) < snapshot < "" (= ga = final = release) < sp < other
 *
 * where "other" qualifiers compare lexically among themselves, and every
 * numeric token is greater than every qualifier. The single letters a, b
 * and m are aliases of alpha, beta and milestone when directly followed by
 * a digit ("1.0a1" is "1.0-alpha-1").
 *
 * For comparison, release qualifiers are dropped and runs of "0" that are
 * followed by a qualifier or by the end of the string are dropped, so
 * "1", "1.0", "1.0.0-ga" and "1-final" are all equal and "1.0-alpha" equals
 * "1-alpha". Shorter keys are padded with the release marker.
 *
 * The lexical order of unknown qualifiers is a local choice; the Maven
 * policy leaves it unspecified.
 */

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mvndiv {

enum class TokenKind : std::uint8_t { Numeric, Qualifier };

struct VersionToken {
  TokenKind kind;
  /// Numeric: decimal digits without leading zeros ("0" for zero).
  /// Qualifier: lowercase text with aliases resolved ("" for release).
  std::string value;

  bool operator==(const VersionToken&) const = default;
};

class VersionKey {
public:
  /// Throws ParseError on empty input.
  static VersionKey parse(std::string_view text);

  const std::string& raw() const noexcept { return raw_; }
  /// Every token, as written (after lowercasing and alias resolution).
  const std::vector<VersionToken>& tokens() const noexcept { return tokens_; }
  /// Tokens that take part in comparison, see the file comment.
  const std::vector<VersionToken>& canonical_tokens() const noexcept { return canonical_; }
  /// Dotted rendering of the canonical tokens, e.g. "1.alpha.2".
  std::string canonical() const;

  friend std::strong_ordering operator<=>(const VersionKey& a, const VersionKey& b);
  friend bool operator==(const VersionKey& a, const VersionKey& b) { return a.canonical_ == b.canonical_; }

private:
  std::string raw_;
  std::vector<VersionToken> tokens_;
  std::vector<VersionToken> canonical_;
};

inline VersionKey parse_version(std::string_view text) { return VersionKey::parse(text); }

std::strong_ordering compare_versions(const VersionKey& a, const VersionKey& b);

/// Compare two raw version strings.
std::strong_ordering compare_versions(std::string_view a, std::string_view b);

/// A calendar day. Ordered by calendar order.
class ReleaseDate {
public:
  constexpr ReleaseDate() = default;
  /// Days since 1970-01-01.
  constexpr explicit ReleaseDate(std::int32_t days) : days_(days) {}

  /// Parses ISO "YYYY-MM-DD"; throws ParseError otherwise.
  static ReleaseDate parse(std::string_view iso);
  static ReleaseDate from_ymd(int year, unsigned month, unsigned day);

  constexpr std::int32_t days() const noexcept { return days_; }
  std::string iso() const;

  friend constexpr auto operator<=>(ReleaseDate, ReleaseDate) = default;

private:
  std::int32_t days_ = 0;
};

}  // namespace mvndiv
