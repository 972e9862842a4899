#include "mvndiv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "mvndiv/errors.hpp"

namespace mvndiv {

std::string StatusPattern::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out.push_back(',');
    out.push_back(static_cast<char>(symbols[i]));
  }
  out.push_back(']');
  return out;
}

StatusPattern StatusPattern::compressed() const {
  StatusPattern out;
  for (auto s : symbols)
    if (out.symbols.empty() || out.symbols.back() != s) out.symbols.push_back(s);
  return out;
}

StatusPattern parse_pattern(std::string_view text) {
  StatusPattern out;
  for (char c : text) {
    if (c == 'A' || c == 'a')
      out.symbols.push_back(StatusSymbol::Active);
    else if (c == 'P' || c == 'p')
      out.symbols.push_back(StatusSymbol::Passive);
    else if (c != '[' && c != ']' && c != ',' && c != ' ')
      throw ParseError("invalid status pattern '" + std::string(text) + "'");
  }
  return out;
}

StatusPattern status_pattern(const DependencyGraph& g, const ActivityTable& activity, LibraryId l, bool compressed) {
  StatusPattern p;
  for (VertexId v : g.library(l).chain)
    p.symbols.push_back(activity.is_active(v) ? StatusSymbol::Active : StatusSymbol::Passive);
  return compressed ? p.compressed() : p;
}

std::vector<std::pair<StatusPattern, std::size_t>> pattern_frequencies(const DependencyGraph& g,
                                                                       const ActivityTable& activity,
                                                                       std::span<const LibraryId> libraries) {
  std::map<std::string, std::pair<StatusPattern, std::size_t>> counts;
  for (LibraryId l : libraries) {
    if (g.library(l).external()) continue;
    auto p = status_pattern(g, activity, l, true);
    auto& slot = counts[p.str()];
    slot.first = std::move(p);
    ++slot.second;
  }
  std::vector<std::pair<StatusPattern, std::size_t>> out;
  for (auto& [key, entry] : counts) out.push_back(std::move(entry));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  auto lo = static_cast<std::size_t>(std::floor(h));
  auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

TukeyFence tukey_fence(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  TukeyFence f;
  f.q1 = quantile_type7(sorted, 0.25);
  f.q3 = quantile_type7(sorted, 0.75);
  f.upper = f.q3 + 1.5 * (f.q3 - f.q1);
  return f;
}

std::vector<std::size_t> tukey_upper_outliers(std::span<const double> values) {
  if (values.empty()) return {};
  auto fence = tukey_fence(values);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] > fence.upper) out.push_back(i);
  return out;
}

std::string_view to_string(PopularityClass c) {
  switch (c) {
    case PopularityClass::None: return "none";
    case PopularityClass::Single: return "single";
    case PopularityClass::Multiple: return "multiple";
  }
  return "?";
}

SignificantlyPopular significantly_popular(const DependencyGraph& g, LibraryId l, const PopularityScores& scores) {
  const auto& chain = g.library(l).chain;
  SignificantlyPopular out;
  if (chain.empty()) return out;
  std::vector<double> values;
  values.reserve(chain.size());
  for (VertexId v : chain) values.push_back(scores[v]);
  out.fence = tukey_fence(values);
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (values[i] > out.fence.upper) out.versions.push_back(chain[i]);
  out.cls = out.versions.empty()       ? PopularityClass::None
            : out.versions.size() == 1 ? PopularityClass::Single
                                       : PopularityClass::Multiple;
  return out;
}

double positional_index(const DependencyGraph& g, VertexId v) {
  auto n = g.library_of(v).chain.size();
  auto pos = g.chain_position(v);
  if (n < 2) throw DomainError("positional index is undefined for single-version library " + g.library_of(v).name);
  return static_cast<double>(pos) / static_cast<double>(n - 1);
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  Histogram h;
  h.bin_count = bins;
  h.counts.assign(bins, 0);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = static_cast<double>(i) / static_cast<double>(bins);
  for (double x : values) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("histogram value " + std::to_string(x) + " outside [0, 1]");
    auto b = static_cast<std::size_t>(std::floor(x * static_cast<double>(bins)));
    // Floating error can put a value on the wrong side of an edge; the
    // stored edges are authoritative.
    while (b > 0 && x < h.edges[b]) --b;
    while (b + 1 < bins && x >= h.edges[b + 1]) ++b;
    ++h.counts[std::min(b, bins - 1)];
  }
  return h;
}

std::string_view to_string(LibraryCategory c) {
  switch (c) {
    case LibraryCategory::SingleVersion: return "SingleVersion";
    case LibraryCategory::OneShot: return "OneShot";
    case LibraryCategory::MultiVersion: return "MultiVersion";
  }
  return "?";
}

LibraryCategory categorize_library(const DependencyGraph& g, LibraryId l) {
  const auto& chain = g.library(l).chain;
  if (chain.size() <= 1) return LibraryCategory::SingleVersion;
  auto first = *g.vertex(chain.front()).released;
  bool same_day =
      std::all_of(chain.begin(), chain.end(), [&](VertexId v) { return *g.vertex(v).released == first; });
  return same_day ? LibraryCategory::OneShot : LibraryCategory::MultiVersion;
}

std::vector<LibraryId> study_filter(const DependencyGraph& g, std::size_t min_versions, std::size_t max_versions) {
  if (min_versions > max_versions) throw ConfigError("min_versions exceeds max_versions");
  std::vector<LibraryId> out;
  for (LibraryId l : g.libraries_by_name()) {
    auto n = g.library(l).chain.size();
    if (categorize_library(g, l) == LibraryCategory::MultiVersion && n >= min_versions && n <= max_versions)
      out.push_back(l);
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("spearman: sequences differ in length");
  const auto n = x.size();
  if (n < 3) throw DomainError("spearman: at least 3 pairs are required");

  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(n);
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) throw DomainError("spearman: correlation is undefined for a constant sequence");

  SpearmanResult r;
  r.n = n;
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (std::abs(r.rho) >= 1.0) {
    r.p_value = 0.0;
    return r;
  }
  double df = static_cast<double>(n - 2);
  double t = r.rho * std::sqrt(df / (1.0 - r.rho * r.rho));
  boost::math::students_t dist(df);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return r;
}

LibrarySummary library_summary(const DependencyGraph& g, const ActivityTable& activity, LibraryId l,
                               const PopularityScores& version_scores, const PopularityScores& library_scores,
                               const TimelinessCalculator& timeliness) {
  const auto& lib = g.library(l);
  LibrarySummary s;
  s.library = lib.name;
  s.category = categorize_library(g, l);
  s.n_versions = lib.chain.size();
  std::size_t under = 0, timely = 0, over = 0;
  for (VertexId v : lib.chain) {
    switch (activity.status(v)) {
      case VersionStatus::Active: ++s.n_active; break;
      case VersionStatus::PassiveNonDormant: ++s.n_passive_nondormant; break;
      case VersionStatus::Dormant: ++s.n_dormant; break;
    }
    switch (timeliness.evaluate(v).cls) {
      case TimelinessClass::UnderTimely: ++under; break;
      case TimelinessClass::Timely: ++timely; break;
      case TimelinessClass::OverTimely: ++over; break;
    }
  }
  if (s.n_versions > 0) {
    auto pct = [&](std::size_t k) { return 100.0 * static_cast<double>(k) / static_cast<double>(s.n_versions); };
    s.pct_active = pct(s.n_active);
    s.pct_under = pct(under);
    s.pct_timely = pct(timely);
    s.pct_over = pct(over);
    s.n_significantly_popular = significantly_popular(g, l, version_scores).versions.size();
  }
  s.pop_l = library_scores[l];
  s.pattern = status_pattern(g, activity, l, true);
  return s;
}

}  // namespace mvndiv
