#include "mvndiv/versioning.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "mvndiv/errors.hpp"

namespace mvndiv {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_separator(char c) { return c == '.' || c == '-'; }

std::string strip_leading_zeros(std::string_view digits) {
  auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return "0";
  return std::string(digits.substr(first));
}

std::string resolve_alias(std::string q, bool followed_by_digit) {
  if (followed_by_digit && q.size() == 1) {
    switch (q[0]) {
      case 'a': return "alpha";
      case 'b': return "beta";
      case 'm': return "milestone";
      default: break;
    }
  }
  if (q == "cr") return "rc";
  if (q == "ga" || q == "final" || q == "release") return "";
  return q;
}

// Position of a token in the element order; ties within a class are broken
// by compare_within().
enum class Rank : int {
  Alpha = 0,
  Beta,
  Milestone,
  ReleaseCandidate,
  Snapshot,
  Release,  // also the padding element
  ServicePack,
  Other,
  Number,
};

Rank rank_of(const VersionToken& t) {
  if (t.kind == TokenKind::Numeric) return Rank::Number;
  const auto& q = t.value;
  if (q == "alpha") return Rank::Alpha;
  if (q == "beta") return Rank::Beta;
  if (q == "milestone") return Rank::Milestone;
  if (q == "rc") return Rank::ReleaseCandidate;
  if (q == "snapshot") return Rank::Snapshot;
  if (q.empty()) return Rank::Release;
  if (q == "sp") return Rank::ServicePack;
  return Rank::Other;
}

std::strong_ordering compare_tokens(const VersionToken& a, const VersionToken& b) {
  auto ra = rank_of(a);
  auto rb = rank_of(b);
  if (ra != rb) return static_cast<int>(ra) <=> static_cast<int>(rb);
  if (ra == Rank::Number) {
    if (a.value.size() != b.value.size()) return a.value.size() <=> b.value.size();
    return a.value.compare(b.value) <=> 0;
  }
  if (ra == Rank::Other) return a.value.compare(b.value) <=> 0;
  return std::strong_ordering::equal;
}

std::vector<VersionToken> canonicalize(const std::vector<VersionToken>& tokens) {
  std::vector<VersionToken> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!(t.kind == TokenKind::Qualifier && t.value.empty())) kept.push_back(t);

  // Drop zero runs that are followed by a qualifier or by the end.
  std::vector<VersionToken> out;
  out.reserve(kept.size());
  std::size_t i = 0;
  while (i < kept.size()) {
    bool zero = kept[i].kind == TokenKind::Numeric && kept[i].value == "0";
    if (!zero) {
      out.push_back(kept[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < kept.size() && kept[j].kind == TokenKind::Numeric && kept[j].value == "0") ++j;
    bool significant = j < kept.size() && kept[j].kind == TokenKind::Numeric;
    if (significant)
      for (std::size_t k = i; k < j; ++k) out.push_back(kept[k]);
    i = j;
  }
  return out;
}

}  // namespace

VersionKey VersionKey::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty version string");

  VersionKey key;
  key.raw_ = std::string(text);

  std::string buf;
  bool buf_numeric = false;
  auto flush = [&](bool empty_is_zero, bool followed_by_digit) {
    if (buf.empty()) {
      if (empty_is_zero) key.tokens_.push_back({TokenKind::Numeric, "0"});
      return;
    }
    if (buf_numeric)
      key.tokens_.push_back({TokenKind::Numeric, strip_leading_zeros(buf)});
    else
      key.tokens_.push_back({TokenKind::Qualifier, resolve_alias(buf, followed_by_digit)});
    buf.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (is_separator(c)) {
      flush(true, false);
      continue;
    }
    bool digit = is_digit(c);
    if (!buf.empty() && digit != buf_numeric) flush(false, digit);
    buf_numeric = digit;
    buf.push_back(digit ? c : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  flush(is_separator(text.back()), false);

  key.canonical_ = canonicalize(key.tokens_);
  return key;
}

std::string VersionKey::canonical() const {
  std::string out;
  for (std::size_t i = 0; i < canonical_.size(); ++i) {
    if (i) out.push_back('.');
    out += canonical_[i].value;
  }
  return out;
}

std::strong_ordering operator<=>(const VersionKey& a, const VersionKey& b) {
  static const VersionToken kPad{TokenKind::Qualifier, ""};
  const auto& x = a.canonical_;
  const auto& y = b.canonical_;
  std::size_t n = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tx = i < x.size() ? x[i] : kPad;
    const auto& ty = i < y.size() ? y[i] : kPad;
    if (auto c = compare_tokens(tx, ty); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_versions(const VersionKey& a, const VersionKey& b) { return a <=> b; }

std::strong_ordering compare_versions(std::string_view a, std::string_view b) {
  return VersionKey::parse(a) <=> VersionKey::parse(b);
}

ReleaseDate ReleaseDate::from_ymd(int year, unsigned month, unsigned day) {
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok())
    throw ParseError("invalid calendar date " + std::to_string(year) + "-" + std::to_string(month) + "-" +
                     std::to_string(day));
  return ReleaseDate(static_cast<std::int32_t>(sys_days{ymd}.time_since_epoch().count()));
}

ReleaseDate ReleaseDate::parse(std::string_view iso) {
  auto bad = [&] { return ParseError("invalid date '" + std::string(iso) + "', expected YYYY-MM-DD"); };
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') throw bad();
  auto field = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    auto s = iso.substr(pos, len);
    if (!std::all_of(s.begin(), s.end(), is_digit)) throw bad();
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
  };
  int y = field(0, 4);
  int m = field(5, 2);
  int d = field(8, 2);
  try {
    return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
  } catch (const ParseError&) {
    throw bad();
  }
}

std::string ReleaseDate::iso() const {
  using namespace std::chrono;
  year_month_day ymd{sys_days{std::chrono::days{days_}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace mvndiv
