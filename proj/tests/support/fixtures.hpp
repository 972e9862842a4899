#pragma once

// Shared test fixtures and brute-force oracles. Nothing here calls into the
// graph algorithms under test except the builder used to materialize inputs.

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mvndiv/graph.hpp"
#include "mvndiv/ingest.hpp"

#ifndef MVNDIV_DATA_DIR
#error "MVNDIV_DATA_DIR must point at the repository data/ directory"
#endif

namespace mvndiv::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(MVNDIV_DATA_DIR) / name;
}

inline DependencyGraph load_fig1() {
  return ingest_files({data_path("fig1.ndjson")}, {}).graph;
}

/// FIG1 short names (a1, b2, ...) to coordinates.
inline Coordinate fig1(const std::string& name) {
  static const std::map<std::string, std::string> versions{
      {"a1", "1.0"}, {"a2", "2.0"}, {"a3", "1.5"}, {"b1", "1.0"}, {"b2", "2.0"},
      {"c1", "1.0"}, {"c2", "2.0"}, {"c3", "3.0"}, {"d1", "1.0"}};
  std::string lib(1, static_cast<char>(std::toupper(name[0])));
  return Coordinate{"fig1", lib, versions.at(name)};
}

inline VertexId fig1_id(const DependencyGraph& g, const std::string& name) { return g.at(fig1(name)); }

inline std::set<std::string> fig1_names(const DependencyGraph& g, const std::vector<VertexId>& ids) {
  std::set<std::string> out;
  for (VertexId v : ids) {
    const auto& c = g.vertex(v).coordinate;
    std::string name(1, static_cast<char>(std::tolower(c.artifact[0])));
    for (const auto& n : {"a1", "a2", "a3", "b1", "b2", "c1", "c2", "c3", "d1"})
      if (fig1(n) == c) name = n;
    out.insert(name);
  }
  return out;
}

/// Plain edge-list description of a random graph, kept independently of
/// DependencyGraph so oracles can work from it.
struct RandomGraph {
  struct Version {
    std::string library;
    std::string version;
    int day;
  };
  std::vector<Version> versions;
  std::vector<std::pair<int, int>> edges;  // indices into versions

  Coordinate coordinate(int i) const { return Coordinate{"rnd", versions[i].library, versions[i].version}; }

  DependencyGraph build() const {
    GraphBuilder b;
    for (int i = 0; i < static_cast<int>(versions.size()); ++i)
      b.add_artifact(coordinate(i), ReleaseDate::from_ymd(2010, 1, 1 + versions[i].day % 28));
    for (auto [from, to] : edges) b.add_dependency(coordinate(from), coordinate(to), std::nullopt);
    return std::move(b).build({});
  }
};

/// Up to `max_vertices` versions spread over up to `max_libraries`
/// libraries. With `acyclic`, edges only point from higher to lower index.
inline RandomGraph random_graph(std::mt19937_64& rng, int max_vertices, int max_libraries, bool acyclic,
                                double edge_probability = -1.0) {
  RandomGraph rg;
  std::uniform_int_distribution<int> nv(1, max_vertices);
  std::uniform_int_distribution<int> nl(1, max_libraries);
  int n = nv(rng);
  int libs = std::min(nl(rng), n);
  std::vector<int> next_minor(libs, 0);
  std::uniform_int_distribution<int> pick_lib(0, libs - 1);
  std::uniform_int_distribution<int> day(0, 27);
  for (int i = 0; i < n; ++i) {
    int l = i < libs ? i : pick_lib(rng);
    // Distinct but shuffled-looking version strings within a library.
    int minor = next_minor[l]++;
    std::string v = std::to_string(1 + minor % 3) + "." + std::to_string(minor);
    rg.versions.push_back({"L" + std::to_string(l), v, day(rng)});
  }
  double p = edge_probability > 0 ? edge_probability : std::min(0.5, 2.5 / std::max(1, n));
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (acyclic && j >= i) continue;
      if (coin(rng)) rg.edges.emplace_back(i, j);
    }
  return rg;
}

/// Brute-force reachability: every vertex reachable from `start` via a
/// path of length >= 1, excluding `start`.
inline std::set<int> reach(const std::vector<std::vector<int>>& adj, int start) {
  std::set<int> seen;
  std::vector<int> stack{start};
  std::vector<bool> visited(adj.size(), false);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u]) {
      if (visited[w]) continue;
      visited[w] = true;
      if (w != start) seen.insert(w);
      stack.push_back(w);
    }
  }
  return seen;
}

inline std::vector<std::vector<int>> adjacency(int n, const std::vector<std::pair<int, int>>& edges, bool reversed) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    if (reversed)
      adj[b].push_back(a);
    else
      adj[a].push_back(b);
  }
  return adj;
}

/// Type-7 quantile written from the textbook definition with 1-based order
/// statistics: Q(p) = x[j] + g (x[j+1] - x[j]), j = floor(1 + (n-1)p).
inline double textbook_quantile7(std::vector<double> xs, double p) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double h = 1.0 + (n - 1.0) * p;
  double j = std::floor(h);
  double g = h - j;
  auto at = [&](double k) { return xs[static_cast<std::size_t>(std::min(k, n) - 1.0)]; };
  return at(j) + g * (at(j + 1.0) - at(j));
}

}  // namespace mvndiv::testing
