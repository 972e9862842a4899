#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <functional>
#include <sstream>

#include "mvndiv/analysis.hpp"
#include "mvndiv/cli.hpp"
#include "mvndiv/errors.hpp"
#include "mvndiv/ingest.hpp"
#include "mvndiv/metrics.hpp"

namespace py = pybind11;
using namespace mvndiv;

namespace {

// A frozen graph plus the metric tables derived from it. Not copyable: the
// tables keep a pointer to the graph.
class Graph {
public:
  explicit Graph(IngestResult r) : graph_(std::move(r.graph)), warnings_(std::move(r.warnings)) {}
  Graph(const Graph&) = delete;

  const DependencyGraph& g() const { return graph_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const ActivityTable& activity() {
    if (!activity_) activity_ = ActivityTable::compute(graph_);
    return *activity_;
  }
  const TimelinessCalculator& timeliness() {
    if (!timeliness_) timeliness_.emplace(graph_, activity());
    return *timeliness_;
  }

  std::vector<std::string> names(const std::vector<VertexId>& ids) const {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (auto v : ids) out.push_back(graph_.vertex(v).coordinate.str());
    std::sort(out.begin(), out.end());
    return out;
  }

  py::dict per_version(const std::function<py::object(VertexId)>& fn) const {
    py::dict out;
    for (auto v : graph_.vertices_by_coordinate())
      if (!graph_.vertex(v).external) out[py::str(graph_.vertex(v).coordinate.str())] = fn(v);
    return out;
  }

private:
  DependencyGraph graph_;
  std::vector<std::string> warnings_;
  std::optional<ActivityTable> activity_;
  std::optional<TimelinessCalculator> timeliness_;
};

GraphBuilder::Options options(const std::string& on_missing, const std::optional<std::string>& snapshot,
                              const std::vector<std::string>& exclude_scopes) {
  GraphBuilder::Options o;
  if (on_missing == "stub")
    o.on_missing = MissingPolicy::Stub;
  else if (on_missing == "skip")
    o.on_missing = MissingPolicy::Skip;
  else if (on_missing == "strict")
    o.on_missing = MissingPolicy::Strict;
  else
    throw ConfigError("on_missing must be one of stub, skip, strict");
  if (snapshot) o.snapshot = ReleaseDate::parse(*snapshot);
  o.exclude_scopes = exclude_scopes;
  return o;
}

PopularityConfig popularity_config(double damping, const std::string& mode, std::size_t max_iterations,
                                   double tolerance, unsigned threads) {
  PopularityConfig c{damping, PopularityMode::Literal, max_iterations, tolerance, threads};
  if (mode == "normalized")
    c.mode = PopularityMode::Normalized;
  else if (mode != "literal")
    throw ConfigError("mode must be literal or normalized");
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Version diversity metrics over temporal dependency graphs";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<DataError>(m, "DataError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<LookupError>(m, "LookupError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base);

  m.def("canonical_version", [](const std::string& v) { return parse_version(v).canonical(); });
  m.def(
      "compare_versions",
      [](const std::string& a, const std::string& b) {
        auto r = compare_versions(a, b);
        return r < 0 ? -1 : r > 0 ? 1 : 0;
      },
      "-1, 0 or 1 as a orders before, equal to, or after b");

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_files",
          [](const std::vector<std::filesystem::path>& paths, const std::string& on_missing,
             std::optional<std::string> snapshot, std::vector<std::string> exclude_scopes) {
            return std::make_unique<Graph>(ingest_files(paths, options(on_missing, snapshot, exclude_scopes)));
          },
          py::arg("paths"), py::arg("on_missing") = "stub", py::arg("snapshot") = py::none(),
          py::arg("exclude_scopes") = std::vector<std::string>{})
      .def_static(
          "from_ndjson",
          [](const std::string& text, const std::string& on_missing, std::optional<std::string> snapshot,
             std::vector<std::string> exclude_scopes) {
            return std::make_unique<Graph>(ingest_ndjson(text, options(on_missing, snapshot, exclude_scopes)));
          },
          py::arg("text"), py::arg("on_missing") = "stub", py::arg("snapshot") = py::none(),
          py::arg("exclude_scopes") = std::vector<std::string>{})
      .def_property_readonly("vertex_count", [](const Graph& s) { return s.g().vertex_count(); })
      .def_property_readonly("edge_count", [](const Graph& s) { return s.g().edge_count(); })
      .def_property_readonly("library_count", [](const Graph& s) { return s.g().library_count(); })
      .def_property_readonly("snapshot", [](const Graph& s) { return s.g().snapshot().iso(); })
      .def_property_readonly("warnings", &Graph::warnings)
      .def("versions", [](const Graph& s) {
        std::vector<VertexId> ids;
        for (auto v : s.g().vertices_by_coordinate())
          if (!s.g().vertex(v).external) ids.push_back(v);
        return s.names(ids);
      })
      .def("libraries", [](const Graph& s) {
        std::vector<std::string> out;
        for (auto l : s.g().libraries_by_name()) out.push_back(s.g().library(l).name);
        return out;
      })
      .def(
          "dependencies",
          [](const Graph& s, const std::string& gav, bool transitive) {
            return s.names(s.g().dependencies(s.g().at(gav), transitive));
          },
          py::arg("coordinate"), py::arg("transitive") = false)
      .def(
          "users",
          [](const Graph& s, const std::string& gav, bool transitive) {
            return s.names(s.g().users(s.g().at(gav), transitive));
          },
          py::arg("coordinate"), py::arg("transitive") = false)
      .def("next",
           [](const Graph& s, const std::string& gav) -> std::optional<std::string> {
             auto n = s.g().next(s.g().at(gav));
             if (!n) return std::nullopt;
             return s.g().vertex(*n).coordinate.str();
           })
      .def("latest",
           [](const Graph& s, const std::string& library) {
             return s.g().vertex(s.g().latest(s.g().library_id(library))).coordinate.str();
           })
      .def("latests", [](const Graph& s) { return s.names(s.g().latests()); })
      .def("library_weights",
           [](const Graph& s) {
             auto gl = elevate(s.g());
             py::dict out;
             for (const auto& e : gl.edges())
               out[py::make_tuple(s.g().library(e.from).name, s.g().library(e.to).name)] = e.weight;
             return out;
           })
      .def("activity",
           [](Graph& s) {
             const auto& act = s.activity();
             return s.per_version([&](VertexId v) { return py::str(std::string(to_string(act.status(v)))); });
           })
      .def("library_status",
           [](Graph& s, const std::string& library) {
             return std::string(to_string(s.activity().library_status(s.g().library_id(library))));
           })
      .def("lifespan",
           [](Graph& s, const std::string& gav) -> py::object {
             auto ls = lifespan(s.g(), s.activity(), s.g().at(gav));
             if (!ls) return py::none();
             return py::make_tuple(ls->start.iso(), ls->end.iso(), ls->clamped);
           })
      .def(
          "popularity",
          [](const Graph& s, double damping, const std::string& mode, std::size_t max_iterations, double tolerance,
             unsigned threads) {
            auto scores = version_popularity(s.g(), popularity_config(damping, mode, max_iterations, tolerance, threads));
            return s.per_version([&](VertexId v) { return py::float_(scores[v]); });
          },
          py::arg("damping") = 0.85, py::arg("mode") = "literal", py::arg("max_iterations") = 200,
          py::arg("tolerance") = 1e-9, py::arg("threads") = 1)
      .def(
          "library_popularity",
          [](const Graph& s, double damping, std::size_t max_iterations, double tolerance) {
            auto scores = library_popularity(elevate(s.g()),
                                             popularity_config(damping, "literal", max_iterations, tolerance, 1));
            py::dict out;
            for (auto l : s.g().libraries_by_name())
              if (!s.g().library(l).external()) out[py::str(s.g().library(l).name)] = scores[l];
            return out;
          },
          py::arg("damping") = 0.85, py::arg("max_iterations") = 200, py::arg("tolerance") = 1e-9)
      .def("timeliness",
           [](Graph& s, const std::string& gav) {
             auto r = s.timeliness().evaluate(s.g().at(gav));
             return py::make_tuple(r.numerator, r.denominator, r.value(), std::string(to_string(r.cls)));
           })
      .def("pattern",
           [](Graph& s, const std::string& library, bool compressed) {
             return status_pattern(s.g(), s.activity(), s.g().library_id(library), compressed).str();
           },
           py::arg("library"), py::arg("compressed") = true)
      .def("positional_index",
           [](const Graph& s, const std::string& gav) { return positional_index(s.g(), s.g().at(gav)); })
      .def("category",
           [](const Graph& s, const std::string& library) {
             return std::string(to_string(categorize_library(s.g(), s.g().library_id(library))));
           })
      .def(
          "study_subjects",
          [](const Graph& s, std::size_t min_versions, std::size_t max_versions) {
            std::vector<std::string> out;
            for (auto l : study_filter(s.g(), min_versions, max_versions)) out.push_back(s.g().library(l).name);
            return out;
          },
          py::arg("min_versions") = 5, py::arg("max_versions") = 200);

  m.def("quantile_type7", [](std::vector<double> xs, double p) {
    std::sort(xs.begin(), xs.end());
    return quantile_type7(xs, p);
  });
  m.def("tukey_upper_outliers", [](const std::vector<double>& xs) { return tukey_upper_outliers(xs); },
        "Indices of values strictly above Q3 + 1.5 IQR");
  m.def(
      "histogram",
      [](const std::vector<double>& xs, std::size_t bins) {
        auto h = histogram(xs, bins);
        return py::make_tuple(h.edges, h.counts);
      },
      py::arg("values"), py::arg("bins") = 30);
  m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) {
    auto r = spearman(x, y);
    return py::make_tuple(r.rho, r.p_value);
  });

  m.def(
      "run",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "mvndiv");
        std::ostringstream out, err;
        int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run the command-line tool in-process; returns (exit_code, stdout, stderr)");
}
