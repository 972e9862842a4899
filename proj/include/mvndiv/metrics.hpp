#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mvndiv/graph.hpp"

namespace mvndiv {

// ---------------------------------------------------------------------------
// Activity status

enum class VersionStatus : std::uint8_t { Active, PassiveNonDormant, Dormant };
enum class LibraryStatus : std::uint8_t { Active, Passive, Dormant };

std::string_view to_string(VersionStatus s);
std::string_view to_string(LibraryStatus s);

/// Activity status of every non-external version.
///
/// A version is active when it lies in the transitive dependency tree of some
/// latest version, dormant when it has no direct users (and is not active),
/// and passive non-dormant otherwise.
class ActivityTable {
public:
  static ActivityTable compute(const DependencyGraph& g);

  /// Throws DomainError for external stubs.
  VersionStatus status(VertexId v) const;
  bool is_active(VertexId v) const { return status(v) == VersionStatus::Active; }
  /// Throws LookupError for external-only libraries.
  LibraryStatus library_status(LibraryId l) const;

  /// Sorted set of active versions.
  const std::vector<VertexId>& active() const noexcept { return active_; }

  std::size_t count(VersionStatus s) const;
  std::size_t count(LibraryStatus s) const;

private:
  const DependencyGraph* graph_ = nullptr;
  std::vector<std::optional<VersionStatus>> status_;
  std::vector<std::optional<LibraryStatus>> library_status_;
  std::vector<VertexId> active_;
};

VersionStatus activity_status(const DependencyGraph& g, VertexId v);
LibraryStatus library_status(const DependencyGraph& g, LibraryId l);

// ---------------------------------------------------------------------------
// Lifespan

struct Lifespan {
  ReleaseDate start;
  ReleaseDate end;
  /// The computed end preceded the release date and was clamped to it.
  bool clamped = false;
};

/// Empty for dormant versions. Active versions live until the snapshot;
/// passive ones until the latest release that succeeded one of their
/// transitive users.
std::optional<Lifespan> lifespan(const DependencyGraph& g, const ActivityTable& activity, VertexId v);

// ---------------------------------------------------------------------------
// Popularity

enum class PopularityMode { Literal, Normalized };

struct PopularityConfig {
  double damping = 0.85;
  PopularityMode mode = PopularityMode::Literal;
  std::size_t max_iterations = 200;
  double tolerance = 1e-9;
  /// Worker threads for each sweep; 0 or 1 runs inline.
  unsigned threads = 1;

  /// Throws ConfigError when a value is out of range.
  void validate() const;
};

struct PopularityScores {
  /// Indexed by VertexId::value or LibraryId::value.
  std::vector<double> values;
  /// Sweeps performed; 0 when evaluated exactly in topological order.
  std::size_t iterations = 0;
  /// L1 norm of the last sweep's update; 0 for exact evaluation.
  double residual = 0.0;

  double operator[](VertexId v) const { return values.at(v.value); }
  double operator[](LibraryId l) const { return values.at(l.value); }
};

/// pop(v) = (1-d) + d * sum over direct users i of pop(i)            (literal)
/// pop(v) = (1-d) + d * sum over direct users i of pop(i) / |deps(i)|  (normalized)
///
/// Literal mode on an acyclic graph is evaluated exactly in topological
/// order. Otherwise a Jacobi iteration runs until the L1 update is within
/// tolerance; ConvergenceError is thrown when it does not.
PopularityScores version_popularity(const DependencyGraph& g, const PopularityConfig& config = {});

/// Weighted PageRank over the library graph:
///   pop(l) = (1-d) + d * sum over user libraries u of pop(u) * cin(u,l) * cout(u,l)
///   cin(u,l)  = Win(l)  / sum of Win(p)  over p in D(u)
///   cout(u,l) = Wout(l) / sum of Wout(p) over p in D(u)
/// A factor whose denominator is zero falls back to the uniform share 1/|D(u)|.
PopularityScores library_popularity(const LibraryGraph& gl, const PopularityConfig& config = {});

// ---------------------------------------------------------------------------
// Timeliness

enum class TimelinessClass : std::uint8_t { UnderTimely, Timely, OverTimely };

std::string_view to_string(TimelinessClass c);

struct TimelinessResult {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  /// [release date, end]; empty when a special rule decided the value.
  std::optional<std::pair<ReleaseDate, ReleaseDate>> period;
  TimelinessClass cls = TimelinessClass::UnderTimely;

  double value() const { return denominator == 0 ? 0.0 : static_cast<double>(numerator) / denominator; }
};

struct TimelinessOptions {
  /// Count only users released inside the timeliness period. Off by default:
  /// the numerator is every direct user.
  bool period_users_only = false;
};

/// Evaluates timeliness for many versions of one graph; the per-library
/// usage index is built once.
class TimelinessCalculator {
public:
  TimelinessCalculator(const DependencyGraph& g, const ActivityTable& activity, TimelinessOptions options = {});

  /// Dormant versions score 0 and first releases score 1. Otherwise the
  /// period runs from the release date to the earliest later-released
  /// successor (or the snapshot), and the score is |users(v)| over the number
  /// of versions released in that period that depend on v's library.
  TimelinessResult evaluate(VertexId v) const;

  /// Versions released in [from, to] (inclusive) depending on library l.
  std::size_t usages_between(LibraryId l, ReleaseDate from, ReleaseDate to) const;

private:
  const DependencyGraph* graph_;
  const ActivityTable* activity_;
  TimelinessOptions options_;
  std::vector<std::vector<ReleaseDate>> usage_dates_;  // per library, sorted
};

TimelinessResult timeliness(const DependencyGraph& g, VertexId v);

}  // namespace mvndiv
