#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mvndiv/analysis.hpp"
#include "mvndiv/graph.hpp"
#include "mvndiv/metrics.hpp"
#include "mvndiv/report.hpp"

namespace mvndiv {

enum class HistogramMetric { PositionalActive, PositionalPopular };

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::optional<ReleaseDate> snapshot;
  MissingPolicy on_missing = MissingPolicy::Stub;
  std::vector<std::string> exclude_scopes;
  PopularityConfig popularity;
  TimelinessOptions timeliness;
  bool study_subjects = false;
  std::size_t min_versions = 5;
  std::size_t max_versions = 200;
  std::size_t bins = 30;
  HistogramMetric hist_metric = HistogramMetric::PositionalActive;
  std::optional<std::filesystem::path> out_dir;
  ReportFormat format = ReportFormat::Csv;
  unsigned threads = 1;

  /// Throws ConfigError when a parameter is out of range.
  void validate() const;
};

/// Computes the metrics behind every report on demand, each at most once.
class Pipeline {
public:
  Pipeline(DependencyGraph graph, RunConfig config);

  const DependencyGraph& graph() const { return graph_; }
  const RunConfig& config() const { return config_; }

  const ActivityTable& activity();
  const LibraryGraph& library_graph();
  const PopularityScores& version_scores();
  const PopularityScores& library_scores();
  const TimelinessCalculator& timeliness();
  /// Libraries under study: all non-external ones, or the study filter's
  /// selection. Ascending by name.
  const std::vector<LibraryId>& libraries();

  Table stats();
  Table versions();
  Table libraries_table();
  /// Pattern frequencies, and how many patterns / libraries end in A.
  std::vector<Table> patterns();
  Table hist();
  /// Per-library (pct_active, pop_l) pairs and the Spearman results.
  std::vector<Table> correlate();
  Table summary();

private:
  DependencyGraph graph_;
  RunConfig config_;
  std::optional<ActivityTable> activity_;
  std::optional<LibraryGraph> library_graph_;
  std::optional<PopularityScores> version_scores_;
  std::optional<PopularityScores> library_scores_;
  std::optional<TimelinessCalculator> timeliness_;
  std::optional<std::vector<LibraryId>> libraries_;
  std::optional<std::vector<LibrarySummary>> summaries_;

  const std::vector<LibrarySummary>& summaries();
};

/// Exit statuses of `run`.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitConvergence = 3 };

/// Command-line entry point. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvndiv
