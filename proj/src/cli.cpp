#include "mvndiv/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <sstream>

#include "mvndiv/errors.hpp"
#include "mvndiv/ingest.hpp"
#include "mvndiv/parallel.hpp"

namespace mvndiv {
namespace {

Cell num(std::size_t v) { return static_cast<std::int64_t>(v); }
Cell real(double v) { return v; }
Cell text(std::string_view s) { return std::string(s); }

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

void RunConfig::validate() const {
  popularity.validate();
  if (bins < 1) throw ConfigError("--bins must be at least 1");
  if (min_versions > max_versions) throw ConfigError("--min-versions exceeds --max-versions");
  if (threads < 1) throw ConfigError("--threads must be at least 1");
}

Pipeline::Pipeline(DependencyGraph graph, RunConfig config) : graph_(std::move(graph)), config_(std::move(config)) {
  config_.popularity.threads = config_.threads;
}

const ActivityTable& Pipeline::activity() {
  if (!activity_) activity_ = ActivityTable::compute(graph_);
  return *activity_;
}

const LibraryGraph& Pipeline::library_graph() {
  if (!library_graph_) library_graph_ = elevate(graph_);
  return *library_graph_;
}

const PopularityScores& Pipeline::version_scores() {
  if (!version_scores_) version_scores_ = version_popularity(graph_, config_.popularity);
  return *version_scores_;
}

const PopularityScores& Pipeline::library_scores() {
  if (!library_scores_) library_scores_ = library_popularity(library_graph(), config_.popularity);
  return *library_scores_;
}

const TimelinessCalculator& Pipeline::timeliness() {
  if (!timeliness_) timeliness_.emplace(graph_, activity(), config_.timeliness);
  return *timeliness_;
}

const std::vector<LibraryId>& Pipeline::libraries() {
  if (!libraries_) {
    if (config_.study_subjects) {
      libraries_ = study_filter(graph_, config_.min_versions, config_.max_versions);
    } else {
      libraries_.emplace();
      for (LibraryId l : graph_.libraries_by_name())
        if (!graph_.library(l).external()) libraries_->push_back(l);
    }
  }
  return *libraries_;
}

const std::vector<LibrarySummary>& Pipeline::summaries() {
  if (!summaries_) {
    const auto& libs = libraries();
    const auto& act = activity();
    const auto& vs = version_scores();
    const auto& ls = library_scores();
    const auto& tim = timeliness();
    std::vector<LibrarySummary> rows(libs.size());
    parallel_for(libs.size(), config_.threads,
                 [&](std::size_t i) { rows[i] = library_summary(graph_, act, libs[i], vs, ls, tim); });
    summaries_ = std::move(rows);
  }
  return *summaries_;
}

Table Pipeline::stats() {
  const auto& gl = library_graph();
  std::size_t external_libs = 0;
  for (std::uint32_t l = 0; l < graph_.library_count(); ++l)
    if (graph_.library(LibraryId{l}).external()) ++external_libs;
  Table t{"stats", {"metric", "value"}, {}};
  t.rows.push_back({text("vertices"), num(graph_.vertex_count())});
  t.rows.push_back({text("versions"), num(graph_.version_count())});
  t.rows.push_back({text("external_stubs"), num(graph_.vertex_count() - graph_.version_count())});
  t.rows.push_back({text("dependency_edges"), num(graph_.edge_count())});
  t.rows.push_back({text("libraries"), num(graph_.library_count() - external_libs)});
  t.rows.push_back({text("external_libraries"), num(external_libs)});
  t.rows.push_back({text("library_edges"), num(gl.edges().size())});
  t.rows.push_back({text("snapshot"), text(graph_.snapshot().iso())});
  return t;
}

Table Pipeline::versions() {
  const auto& act = activity();
  const auto& scores = version_scores();
  const auto& tim = timeliness();

  std::vector<VertexId> selected;
  std::vector<bool> wanted(graph_.library_count(), false);
  for (LibraryId l : libraries()) wanted[l.value] = true;
  for (VertexId v : graph_.vertices_by_coordinate()) {
    const auto& rec = graph_.vertex(v);
    if (!rec.external && wanted[rec.library.value]) selected.push_back(v);
  }

  Table t{"versions",
          {"coordinate", "released", "status", "lifespan_start", "lifespan_end", "pop_v", "timeliness",
           "timeliness_class", "positional_index", "lifespan_clamped"},
          {}};
  t.rows.resize(selected.size());
  parallel_for(selected.size(), config_.threads, [&](std::size_t i) {
    VertexId v = selected[i];
    const auto& rec = graph_.vertex(v);
    auto ls = lifespan(graph_, act, v);
    auto tr = tim.evaluate(v);
    Cell pos;
    if (graph_.library_of(v).chain.size() >= 2) pos = positional_index(graph_, v);
    t.rows[i] = {text(rec.coordinate.str()),
                 text(rec.released->iso()),
                 text(to_string(act.status(v))),
                 ls ? text(ls->start.iso()) : Cell{},
                 ls ? text(ls->end.iso()) : Cell{},
                 real(scores[v]),
                 real(tr.value()),
                 text(to_string(tr.cls)),
                 pos,
                 num(ls && ls->clamped ? 1 : 0)};
  });
  return t;
}

Table Pipeline::libraries_table() {
  Table t{"libraries",
          {"library", "category", "n_versions", "n_active", "n_passive_nondormant", "n_dormant", "pct_active", "pop_l",
           "n_signif_popular", "pattern", "pct_under", "pct_timely", "pct_over"},
          {}};
  for (const auto& s : summaries()) {
    t.rows.push_back({text(s.library), text(to_string(s.category)), num(s.n_versions), num(s.n_active),
                      num(s.n_passive_nondormant), num(s.n_dormant), real(s.pct_active), real(s.pop_l),
                      num(s.n_significantly_popular), text(s.pattern.str()), real(s.pct_under), real(s.pct_timely),
                      real(s.pct_over)});
  }
  return t;
}

std::vector<Table> Pipeline::patterns() {
  auto freqs = pattern_frequencies(graph_, activity(), libraries());
  Table t{"patterns", {"pattern", "frequency"}, {}};
  std::size_t distinct_a = 0, libs = 0, libs_a = 0;
  for (const auto& [p, count] : freqs) {
    t.rows.push_back({text(p.str()), num(count)});
    bool ends_a = !p.symbols.empty() && p.symbols.back() == StatusSymbol::Active;
    distinct_a += ends_a;
    libs += count;
    libs_a += ends_a ? count : 0;
  }
  Table ending{"patterns_ending", {"scope", "total", "ending_in_A", "pct_ending_in_A"}, {}};
  ending.rows.push_back({text("distinct_patterns"), num(freqs.size()), num(distinct_a),
                         real(percent(distinct_a, freqs.size()))});
  ending.rows.push_back({text("libraries"), num(libs), num(libs_a), real(percent(libs_a, libs))});
  return {std::move(t), std::move(ending)};
}

Table Pipeline::hist() {
  std::vector<double> values;
  const auto& act = activity();
  for (LibraryId l : libraries()) {
    const auto& chain = graph_.library(l).chain;
    if (chain.size() < 2) continue;
    if (config_.hist_metric == HistogramMetric::PositionalActive) {
      for (VertexId v : chain)
        if (act.is_active(v)) values.push_back(positional_index(graph_, v));
    } else {
      for (VertexId v : significantly_popular(graph_, l, version_scores()).versions)
        values.push_back(positional_index(graph_, v));
    }
  }
  auto h = histogram(values, config_.bins);
  Table t{config_.hist_metric == HistogramMetric::PositionalActive ? "hist_positional_active"
                                                                   : "hist_positional_popular",
          {"bin", "lo", "hi", "count"},
          {}};
  for (std::size_t b = 0; b < h.bin_count; ++b)
    t.rows.push_back({num(b), real(h.edges[b]), real(h.edges[b + 1]), num(h.counts[b])});
  return t;
}

std::vector<Table> Pipeline::correlate() {
  const auto& rows = summaries();
  Table pairs{"correlate", {"library", "pct_active", "pop_l"}, {}};
  std::vector<double> pop, active, under, timely, over;
  for (const auto& s : rows) {
    pairs.rows.push_back({text(s.library), real(s.pct_active), real(s.pop_l)});
    pop.push_back(s.pop_l);
    active.push_back(s.pct_active);
    under.push_back(s.pct_under);
    timely.push_back(s.pct_timely);
    over.push_back(s.pct_over);
  }
  Table corr{"correlation", {"x", "y", "n", "rho", "p_value"}, {}};
  auto add = [&](std::string_view name, const std::vector<double>& x) {
    std::vector<Cell> row{text(name), text("pop_l"), num(x.size()), Cell{}, Cell{}};
    try {
      auto r = spearman(x, pop);
      row[3] = r.rho;
      row[4] = r.p_value;
    } catch (const DomainError&) {
      // Too few libraries or a constant column: the correlation is undefined.
    }
    corr.rows.push_back(std::move(row));
  };
  add("pct_active", active);
  add("pct_under", under);
  add("pct_timely", timely);
  add("pct_over", over);
  return {std::move(pairs), std::move(corr)};
}

Table Pipeline::summary() {
  const auto& act = activity();
  std::size_t va = 0, vp = 0, vd = 0, la = 0, lp = 0, ld = 0;
  for (LibraryId l : libraries()) {
    for (VertexId v : graph_.library(l).chain) {
      switch (act.status(v)) {
        case VersionStatus::Active: ++va; break;
        case VersionStatus::PassiveNonDormant: ++vp; break;
        case VersionStatus::Dormant: ++vd; break;
      }
    }
    switch (act.library_status(l)) {
      case LibraryStatus::Active: ++la; break;
      case LibraryStatus::Passive: ++lp; break;
      case LibraryStatus::Dormant: ++ld; break;
    }
  }
  std::size_t vt = va + vp + vd;
  std::size_t lt = la + lp + ld;
  Table t{"summary", {"status", "n_versions", "pct_versions", "n_libraries", "pct_libraries"}, {}};
  auto row = [&](std::string_view name, std::size_t v, std::size_t l) {
    t.rows.push_back({text(name), num(v), real(percent(v, vt)), num(l), real(percent(l, lt))});
  };
  row("Active", va, la);
  row("PassiveNonDormant", vp, lp);
  row("Dormant", vd, ld);
  row("Total", vt, lt);
  return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string snapshot, format = "csv", on_missing = "stub", mode = "literal", metric = "positional-active";
  std::vector<std::string> inputs, scopes;
  std::string out_dir;

  CLI::App app{"Version diversity metrics over a temporal dependency graph", "mvndiv"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input", inputs, "NDJSON or CSV record files")->required();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_dir, "Directory for report files (default: stdout)");
  app.add_option("--snapshot", snapshot, "Snapshot date YYYY-MM-DD (default: latest release date)");
  app.add_option("--on-missing", on_missing, "Unresolved dependency targets")
      ->check(CLI::IsMember({"stub", "skip", "strict"}));
  app.add_option("--exclude-scopes", scopes, "Dependency scopes to drop")->delimiter(',');
  app.add_option("--damping", cfg.popularity.damping, "Damping factor in (0, 1)");
  app.add_option("--mode", mode, "Version popularity recurrence")->check(CLI::IsMember({"literal", "normalized"}));
  app.add_option("--tol", cfg.popularity.tolerance, "Convergence tolerance (L1)");
  app.add_option("--max-iter", cfg.popularity.max_iterations, "Maximum popularity sweeps");
  app.add_option("--bins", cfg.bins, "Histogram bins");
  app.add_flag("--study-subjects", cfg.study_subjects, "Restrict to multi-version libraries within the bounds");
  app.add_option("--min-versions", cfg.min_versions, "Study filter lower bound (inclusive)");
  app.add_option("--max-versions", cfg.max_versions, "Study filter upper bound (inclusive)");
  app.add_option("--threads", cfg.threads, "Worker threads");
  app.add_flag("--timeliness-period-users", cfg.timeliness.period_users_only,
               "Count only users released within the timeliness period");

  app.add_subcommand("stats", "Print graph counts");
  app.add_subcommand("versions", "Per-version metrics");
  app.add_subcommand("libraries", "Per-library metrics");
  app.add_subcommand("patterns", "Transitional status pattern frequencies");
  auto* hist = app.add_subcommand("hist", "Positional histogram");
  hist->add_option("--metric", metric, "What to bin")
      ->check(CLI::IsMember({"positional-active", "positional-popular"}));
  app.add_subcommand("correlate", "Active share vs. library popularity");
  app.add_subcommand("summary", "Activity status aggregate");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& i : inputs) cfg.inputs.emplace_back(i);
    cfg.exclude_scopes = scopes;
    cfg.format = format == "json" ? ReportFormat::Json : ReportFormat::Csv;
    cfg.on_missing = on_missing == "skip"     ? MissingPolicy::Skip
                     : on_missing == "strict" ? MissingPolicy::Strict
                                              : MissingPolicy::Stub;
    cfg.popularity.mode = mode == "normalized" ? PopularityMode::Normalized : PopularityMode::Literal;
    cfg.hist_metric =
        metric == "positional-popular" ? HistogramMetric::PositionalPopular : HistogramMetric::PositionalActive;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!snapshot.empty()) {
      try {
        cfg.snapshot = ReleaseDate::parse(snapshot);
      } catch (const ParseError& e) {
        throw ConfigError(std::string("--snapshot: ") + e.what());
      }
    }
    cfg.validate();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    GraphBuilder::Options opts{cfg.on_missing, cfg.snapshot, cfg.exclude_scopes};
    auto ingested = ingest_files(cfg.inputs, opts);
    for (const auto& w : ingested.warnings) err << "warning: " << w << "\n";
    Pipeline pipeline(std::move(ingested.graph), cfg);

    const auto& sub = app.get_subcommands().front()->get_name();
    std::vector<Table> tables;
    if (sub == "stats")
      tables.push_back(pipeline.stats());
    else if (sub == "versions")
      tables.push_back(pipeline.versions());
    else if (sub == "libraries")
      tables.push_back(pipeline.libraries_table());
    else if (sub == "patterns")
      tables = pipeline.patterns();
    else if (sub == "hist")
      tables.push_back(pipeline.hist());
    else if (sub == "correlate")
      tables = pipeline.correlate();
    else
      tables.push_back(pipeline.summary());

    const char* ext = cfg.format == ReportFormat::Json ? ".json" : ".csv";
    if (cfg.out_dir) {
      std::error_code ec;
      std::filesystem::create_directories(*cfg.out_dir, ec);
      if (ec) throw DataError("cannot create " + cfg.out_dir->string() + ": " + ec.message());
      for (const auto& t : tables) {
        auto path = *cfg.out_dir / (t.name + ext);
        write_report(t, cfg.format, path);
        err << "wrote " << path.string() << "\n";
      }
    } else if (cfg.format == ReportFormat::Json) {
      out << "{";
      for (std::size_t i = 0; i < tables.size(); ++i) {
        out << (i ? ",\n" : "\n") << '"' << tables[i].name << "\": ";
        write_json(tables[i], out);
      }
      out << "}\n";
    } else {
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out << "\n";
        write_csv(tables[i], out);
      }
    }
    return kExitOk;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace mvndiv
