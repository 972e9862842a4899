#include "mvndiv/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "mvndiv/errors.hpp"

namespace mvndiv {
namespace {

constexpr std::uint32_t kNoPosition = std::numeric_limits<std::uint32_t>::max();

void sort_unique(std::vector<VertexId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Breadth-first closure over `adj`, excluding `start` itself.
std::vector<VertexId> closure(const std::vector<std::vector<VertexId>>& adj, VertexId start) {
  std::vector<bool> seen(adj.size(), false);
  std::deque<VertexId> queue{start};
  seen[start.value] = true;
  std::vector<VertexId> out;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : adj[u.value]) {
      if (seen[w.value]) continue;
      seen[w.value] = true;
      out.push_back(w);
      queue.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Coordinate Coordinate::parse(std::string_view gav) {
  auto first = gav.find(':');
  auto second = first == std::string_view::npos ? first : gav.find(':', first + 1);
  if (second == std::string_view::npos || first == 0 || second == first + 1 || second + 1 == gav.size())
    throw ParseError("invalid coordinate '" + std::string(gav) + "', expected group:artifact:version");
  return {std::string(gav.substr(0, first)), std::string(gav.substr(first + 1, second - first - 1)),
          std::string(gav.substr(second + 1))};
}

std::optional<VertexId> DependencyGraph::find(const Coordinate& c) const {
  auto it = by_coordinate_.find(c.str());
  if (it == by_coordinate_.end()) return std::nullopt;
  return it->second;
}

VertexId DependencyGraph::at(const Coordinate& c) const {
  if (auto v = find(c)) return *v;
  throw LookupError("unknown coordinate " + c.str());
}

std::optional<LibraryId> DependencyGraph::find_library(std::string_view name) const {
  auto it = by_library_.find(std::string(name));
  if (it == by_library_.end()) return std::nullopt;
  return it->second;
}

LibraryId DependencyGraph::library_id(std::string_view name) const {
  if (auto l = find_library(name)) return *l;
  throw LookupError("unknown library " + std::string(name));
}

std::size_t DependencyGraph::chain_position(VertexId v) const {
  auto p = position_.at(v.value);
  if (p == kNoPosition) throw DomainError(vertex(v).coordinate.str() + " is an external stub");
  return p;
}

std::optional<VertexId> DependencyGraph::next(VertexId v) const {
  auto p = chain_position(v);
  const auto& chain = library_of(v).chain;
  if (p + 1 == chain.size()) return std::nullopt;
  return chain[p + 1];
}

std::optional<VertexId> DependencyGraph::previous(VertexId v) const {
  auto p = chain_position(v);
  if (p == 0) return std::nullopt;
  return library_of(v).chain[p - 1];
}

std::vector<VertexId> DependencyGraph::next_all(VertexId v) const {
  auto p = chain_position(v);
  const auto& chain = library_of(v).chain;
  return {chain.begin() + static_cast<std::ptrdiff_t>(p) + 1, chain.end()};
}

VertexId DependencyGraph::latest(LibraryId l) const {
  if (l.value >= libraries_.size()) throw LookupError("unknown library id " + std::to_string(l.value));
  const auto& lib = libraries_[l.value];
  if (lib.chain.empty()) throw LookupError("library " + lib.name + " has no released versions");
  return lib.chain.back();
}

std::vector<VertexId> DependencyGraph::latests() const {
  std::vector<VertexId> out;
  for (const auto& lib : libraries_)
    if (!lib.chain.empty()) out.push_back(lib.chain.back());
  return out;
}

bool DependencyGraph::is_latest(VertexId v) const {
  if (vertex(v).external) return false;
  return library_of(v).chain.back() == v;
}

std::vector<VertexId> DependencyGraph::dependencies(VertexId v, bool transitive) const {
  if (!transitive) {
    auto d = direct_dependencies(v);
    return {d.begin(), d.end()};
  }
  return closure(deps_, v);
}

std::vector<VertexId> DependencyGraph::users(VertexId v, bool transitive) const {
  if (!transitive) {
    auto u = direct_users(v);
    return {u.begin(), u.end()};
  }
  return closure(users_, v);
}

std::vector<VertexId> DependencyGraph::vertices_by_coordinate() const {
  std::vector<VertexId> out(vertices_.size());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = VertexId{i};
  std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) {
    return vertices_[a.value].coordinate < vertices_[b.value].coordinate;
  });
  return out;
}

std::vector<LibraryId> DependencyGraph::libraries_by_name() const {
  std::vector<LibraryId> out(libraries_.size());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = LibraryId{i};
  std::sort(out.begin(), out.end(),
            [&](LibraryId a, LibraryId b) { return libraries_[a.value].name < libraries_[b.value].name; });
  return out;
}

void GraphBuilder::add_artifact(Coordinate c, ReleaseDate released, std::size_t line) {
  artifacts_.push_back({std::move(c), released, line});
}

void GraphBuilder::add_dependency(Coordinate from, Coordinate to, std::optional<std::string> scope,
                                  std::size_t line) {
  dependencies_.push_back({std::move(from), std::move(to), std::move(scope), line});
}

DependencyGraph GraphBuilder::build(const Options& options, std::vector<std::string>* warnings) && {
  DependencyGraph g;
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };

  auto library_for = [&](const Coordinate& c) {
    auto name = c.library();
    auto [it, inserted] = g.by_library_.try_emplace(name, LibraryId{static_cast<std::uint32_t>(g.libraries_.size())});
    if (inserted) g.libraries_.push_back(Library{name, {}, {}});
    return it->second;
  };

  auto add_vertex = [&](const Coordinate& c, std::optional<ReleaseDate> released, std::size_t line) {
    VertexId id{static_cast<std::uint32_t>(g.vertices_.size())};
    VersionKey key;
    try {
      key = VersionKey::parse(c.version);
    } catch (const ParseError& e) {
      throw DataError(std::string(e.what()) + " in " + c.str(), line);
    }
    g.vertices_.push_back(VertexRecord{c, std::move(key), library_for(c), released, !released.has_value()});
    g.by_coordinate_.emplace(c.str(), id);
    return id;
  };

  // First pass: every artifact record becomes a vertex.
  for (const auto& a : artifacts_) {
    if (g.by_coordinate_.contains(a.coordinate.str()))
      throw DataError("duplicate artifact " + a.coordinate.str(), a.line);
    add_vertex(a.coordinate, a.released, a.line);
  }
  g.version_count_ = g.vertices_.size();

  // Second pass: dependencies, creating stubs for unknown targets.
  for (const auto& d : dependencies_) {
    if (d.scope && std::find(options.exclude_scopes.begin(), options.exclude_scopes.end(), *d.scope) !=
                       options.exclude_scopes.end())
      continue;
    auto from = g.find(d.from);
    if (!from) {
      if (options.on_missing == MissingPolicy::Skip) {
        warn("line " + std::to_string(d.line) + ": skipping dependency from unknown artifact " + d.from.str());
        continue;
      }
      throw DataError("dependency source " + d.from.str() + " has no artifact record", d.line);
    }
    auto to = g.find(d.to);
    if (!to) {
      switch (options.on_missing) {
        case MissingPolicy::Stub:
          to = add_vertex(d.to, std::nullopt, d.line);
          break;
        case MissingPolicy::Skip:
          warn("line " + std::to_string(d.line) + ": skipping dependency on unknown artifact " + d.to.str());
          continue;
        case MissingPolicy::Strict:
          throw DataError("dependency target " + d.to.str() + " has no artifact record", d.line);
      }
    }
    g.edges_.push_back(DependencyEdge{*from, *to, d.scope});
  }

  const auto n = g.vertices_.size();
  g.deps_.assign(n, {});
  g.users_.assign(n, {});
  for (const auto& e : g.edges_) {
    g.deps_[e.from.value].push_back(e.to);
    g.users_[e.to.value].push_back(e.from);
  }
  for (auto& v : g.deps_) sort_unique(v);
  for (auto& v : g.users_) sort_unique(v);

  // Precedence chains. Versions that compare equal are ordered by release
  // date, then by raw string, so every chain is strict.
  g.position_.assign(n, kNoPosition);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& rec = g.vertices_[i];
    auto& lib = g.libraries_[rec.library.value];
    (rec.external ? lib.externals : lib.chain).push_back(VertexId{i});
  }
  for (auto& lib : g.libraries_) {
    std::sort(lib.chain.begin(), lib.chain.end(), [&](VertexId a, VertexId b) {
      const auto& ra = g.vertices_[a.value];
      const auto& rb = g.vertices_[b.value];
      if (auto c = ra.version <=> rb.version; c != 0) return c < 0;
      if (ra.released != rb.released) return ra.released < rb.released;
      return ra.coordinate.version < rb.coordinate.version;
    });
    for (std::uint32_t p = 0; p < lib.chain.size(); ++p) g.position_[lib.chain[p].value] = p;
  }

  std::optional<ReleaseDate> max_release;
  for (const auto& a : artifacts_)
    if (!max_release || a.released > *max_release) max_release = a.released;
  if (options.snapshot) {
    if (max_release && *options.snapshot < *max_release)
      throw DataError("snapshot " + options.snapshot->iso() + " precedes release date " + max_release->iso());
    g.snapshot_ = *options.snapshot;
  } else if (max_release) {
    g.snapshot_ = *max_release;
  } else {
    throw DataError("no artifact records and no snapshot date given");
  }
  return g;
}

std::span<const LibraryGraph::Edge> LibraryGraph::out_edges(LibraryId l) const {
  auto [b, e] = out_.at(l.value);
  return std::span<const Edge>(edges_).subspan(b, e - b);
}

std::vector<LibraryGraph::Edge> LibraryGraph::in_edges(LibraryId l) const {
  std::vector<Edge> out;
  for (auto i : in_.at(l.value)) out.push_back(edges_[i]);
  return out;
}

std::vector<LibraryId> LibraryGraph::dependencies(LibraryId l) const {
  std::vector<LibraryId> out;
  for (const auto& e : out_edges(l)) out.push_back(e.to);
  return out;
}

std::vector<LibraryId> LibraryGraph::users(LibraryId l) const {
  std::vector<LibraryId> out;
  for (auto i : in_.at(l.value)) out.push_back(edges_[i].from);
  return out;
}

std::optional<std::uint32_t> LibraryGraph::weight(LibraryId from, LibraryId to) const {
  for (const auto& e : out_edges(from))
    if (e.to == to) return e.weight;
  return std::nullopt;
}

LibraryGraph elevate(const DependencyGraph& g) {
  LibraryGraph gl;
  const auto nl = g.library_count();

  // For each source version, the distinct target libraries count once.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::uint32_t> targets;
    for (VertexId w : g.direct_dependencies(VertexId{v})) targets.push_back(g.vertex(w).library.value);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    auto from = g.vertex(VertexId{v}).library.value;
    for (auto t : targets) pairs.emplace_back(from, t);
  }
  std::sort(pairs.begin(), pairs.end());

  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
    gl.edges_.push_back({LibraryId{pairs[i].first}, LibraryId{pairs[i].second}, static_cast<std::uint32_t>(j - i)});
    i = j;
  }

  gl.out_.assign(nl, {0, 0});
  gl.in_.assign(nl, {});
  gl.in_sum_.assign(nl, 0);
  gl.out_sum_.assign(nl, 0);
  gl.external_.assign(nl, false);
  for (std::uint32_t l = 0; l < nl; ++l) gl.external_[l] = g.library(LibraryId{l}).external();

  std::size_t i = 0;
  for (std::uint32_t l = 0; l < nl; ++l) {
    auto begin = i;
    while (i < gl.edges_.size() && gl.edges_[i].from.value == l) ++i;
    gl.out_[l] = {begin, i};
  }
  for (std::size_t k = 0; k < gl.edges_.size(); ++k) {
    const auto& e = gl.edges_[k];
    gl.in_[e.to.value].push_back(k);
    gl.in_sum_[e.to.value] += e.weight;
    gl.out_sum_[e.from.value] += e.weight;
  }
  return gl;
}

}  // namespace mvndiv
