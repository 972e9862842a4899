#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvndiv/graph.hpp"
#include "mvndiv/metrics.hpp"

namespace mvndiv {

// ---------------------------------------------------------------------------
// Transitional status patterns

enum class StatusSymbol : char { Active = 'A', Passive = 'P' };

struct StatusPattern {
  std::vector<StatusSymbol> symbols;

  /// "[P,A,P]"
  std::string str() const;
  /// Collapses runs of equal symbols.
  StatusPattern compressed() const;

  auto operator<=>(const StatusPattern&) const = default;
};

StatusPattern parse_pattern(std::string_view text);

/// One symbol per version in version order: A for active, P otherwise.
StatusPattern status_pattern(const DependencyGraph& g, const ActivityTable& activity, LibraryId l, bool compressed);

/// Compressed-pattern counts, most frequent first; ties by pattern string.
std::vector<std::pair<StatusPattern, std::size_t>> pattern_frequencies(const DependencyGraph& g,
                                                                       const ActivityTable& activity,
                                                                       std::span<const LibraryId> libraries);

// ---------------------------------------------------------------------------
// Outliers

/// Sample quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7). `sorted` must be ascending and non-empty.
double quantile_type7(std::span<const double> sorted, double p);

struct TukeyFence {
  double q1 = 0;
  double q3 = 0;
  double upper = 0;  ///< q3 + 1.5 * (q3 - q1)
};

TukeyFence tukey_fence(std::span<const double> values);

/// Indices of values strictly above the upper Tukey fence.
std::vector<std::size_t> tukey_upper_outliers(std::span<const double> values);

/// (i) no significantly popular version, (ii) exactly one, (iii) more than one.
enum class PopularityClass : std::uint8_t { None, Single, Multiple };

std::string_view to_string(PopularityClass c);

struct SignificantlyPopular {
  TukeyFence fence;
  std::vector<VertexId> versions;  ///< ascending version order
  PopularityClass cls = PopularityClass::None;
};

/// Versions of l whose popularity exceeds the library's upper Tukey fence.
SignificantlyPopular significantly_popular(const DependencyGraph& g, LibraryId l, const PopularityScores& scores);

// ---------------------------------------------------------------------------
// Positions and histograms

/// (rank - 1) / (n - 1) for the 1-based rank of v in its library's version
/// order. Throws DomainError for single-version libraries.
double positional_index(const DependencyGraph& g, VertexId v);

struct Histogram {
  std::size_t bin_count = 0;
  std::vector<double> edges;  ///< bin_count + 1 boundaries over [0, 1]
  std::vector<std::size_t> counts;
};

/// Equal-width bins over [0, 1]; bins are [lo, hi) except the last, which
/// also holds 1. Throws DomainError for values outside [0, 1].
Histogram histogram(std::span<const double> values, std::size_t bins = 30);

// ---------------------------------------------------------------------------
// Library selection

enum class LibraryCategory : std::uint8_t { SingleVersion, OneShot, MultiVersion };

std::string_view to_string(LibraryCategory c);

/// Single version; several versions released on one day; or anything else.
LibraryCategory categorize_library(const DependencyGraph& g, LibraryId l);

/// Multi-version libraries with min_versions <= #versions <= max_versions,
/// ascending by name. Throws ConfigError when min_versions > max_versions.
std::vector<LibraryId> study_filter(const DependencyGraph& g, std::size_t min_versions = 5,
                                    std::size_t max_versions = 200);

// ---------------------------------------------------------------------------
// Correlation

struct SpearmanResult {
  double rho = 0;
  double p_value = 1;
  std::size_t n = 0;
};

/// Ranks with ties averaged.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rank correlation with a two-sided p-value from the t
/// approximation t = rho * sqrt((n - 2) / (1 - rho^2)) on n - 2 degrees of
/// freedom. Throws DomainError on length mismatch, n < 3, or a constant input.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Per-library summary

struct LibrarySummary {
  std::string library;
  LibraryCategory category = LibraryCategory::SingleVersion;
  std::size_t n_versions = 0;
  std::size_t n_active = 0;
  std::size_t n_passive_nondormant = 0;
  std::size_t n_dormant = 0;
  double pct_active = 0;
  double pop_l = 0;
  std::size_t n_significantly_popular = 0;
  StatusPattern pattern;  ///< compressed
  double pct_under = 0;
  double pct_timely = 0;
  double pct_over = 0;
};

LibrarySummary library_summary(const DependencyGraph& g, const ActivityTable& activity, LibraryId l,
                               const PopularityScores& version_scores, const PopularityScores& library_scores,
                               const TimelinessCalculator& timeliness);

}  // namespace mvndiv
