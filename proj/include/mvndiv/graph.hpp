#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mvndiv/versioning.hpp"

namespace mvndiv {

/// groupId:artifactId:version. (group, artifact) identifies the library.
struct Coordinate {
  std::string group;
  std::string artifact;
  std::string version;

  /// Splits "g:a:v" at the first two colons; throws ParseError otherwise.
  static Coordinate parse(std::string_view gav);

  std::string library() const { return group + ":" + artifact; }
  std::string str() const { return group + ":" + artifact + ":" + version; }

  auto operator<=>(const Coordinate&) const = default;
};

struct VertexId {
  std::uint32_t value = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct LibraryId {
  std::uint32_t value = 0;
  auto operator<=>(const LibraryId&) const = default;
};

struct VertexRecord {
  Coordinate coordinate;
  VersionKey version;
  LibraryId library;
  /// Empty only for external stubs.
  std::optional<ReleaseDate> released;
  /// Referenced by a dependency but missing its own artifact record.
  bool external = false;
};

struct DependencyEdge {
  VertexId from;
  VertexId to;
  std::optional<std::string> scope;
};

struct Library {
  std::string name;  ///< "group:artifact"
  /// Non-external versions in ascending version order. The last one is the latest.
  std::vector<VertexId> chain;
  /// External stubs grouped under this library.
  std::vector<VertexId> externals;

  /// True when every vertex of the library is an external stub.
  bool external() const noexcept { return chain.empty(); }
};

/// What to do with a dependency whose target has no artifact record.
enum class MissingPolicy { Stub, Skip, Strict };

class GraphBuilder;

/// Versioned dependency graph with precedence chains and a snapshot bound.
/// Immutable once built; all queries are const and thread-safe.
class DependencyGraph {
public:
  DependencyGraph() = default;

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t library_count() const noexcept { return libraries_.size(); }
  /// Number of vertices that are not external stubs.
  std::size_t version_count() const noexcept { return version_count_; }

  ReleaseDate snapshot() const noexcept { return snapshot_; }

  const VertexRecord& vertex(VertexId v) const { return vertices_.at(v.value); }
  std::span<const DependencyEdge> edges() const noexcept { return edges_; }
  const Library& library(LibraryId l) const { return libraries_.at(l.value); }
  const Library& library_of(VertexId v) const { return library(vertex(v).library); }

  std::optional<VertexId> find(const Coordinate& c) const;
  /// Throws LookupError for unknown coordinates.
  VertexId at(const Coordinate& c) const;
  VertexId at(std::string_view gav) const { return at(Coordinate::parse(gav)); }

  std::optional<LibraryId> find_library(std::string_view name) const;
  /// Throws LookupError for unknown libraries.
  LibraryId library_id(std::string_view name) const;

  /// <_v successor within the library; empty for the latest version.
  /// Throws DomainError for external stubs.
  std::optional<VertexId> next(VertexId v) const;
  /// <_v predecessor within the library.
  std::optional<VertexId> previous(VertexId v) const;
  /// All versions after v in version order, nearest first.
  std::vector<VertexId> next_all(VertexId v) const;
  /// 0-based position of v in its library chain.
  std::size_t chain_position(VertexId v) const;

  /// Throws LookupError for an unknown or external-only library.
  VertexId latest(LibraryId l) const;
  /// Latest version of every non-external library, ascending by id.
  std::vector<VertexId> latests() const;
  bool is_latest(VertexId v) const;

  /// Direct dependency targets, ascending and without duplicates.
  std::span<const VertexId> direct_dependencies(VertexId v) const { return deps_.at(v.value); }
  /// Direct users, ascending and without duplicates.
  std::span<const VertexId> direct_users(VertexId v) const { return users_.at(v.value); }

  /// deps(v), or deps_tree(v) when transitive. The transitive set never contains v.
  std::vector<VertexId> dependencies(VertexId v, bool transitive) const;
  /// users(v), or users_all(v) when transitive. The transitive set never contains v.
  std::vector<VertexId> users(VertexId v, bool transitive) const;

  /// Every vertex, ascending by coordinate.
  std::vector<VertexId> vertices_by_coordinate() const;
  /// Every library, ascending by name.
  std::vector<LibraryId> libraries_by_name() const;

private:
  friend class GraphBuilder;

  std::vector<VertexRecord> vertices_;
  std::vector<DependencyEdge> edges_;
  std::vector<Library> libraries_;
  std::vector<std::vector<VertexId>> deps_;
  std::vector<std::vector<VertexId>> users_;
  std::vector<std::uint32_t> position_;  // chain position, or UINT32_MAX for stubs
  std::unordered_map<std::string, VertexId> by_coordinate_;
  std::unordered_map<std::string, LibraryId> by_library_;
  std::size_t version_count_ = 0;
  ReleaseDate snapshot_;
};

/// Collects artifact and dependency records in any order, then resolves them.
class GraphBuilder {
public:
  struct Options {
    MissingPolicy on_missing = MissingPolicy::Stub;
    std::optional<ReleaseDate> snapshot;
    /// Dependency records with one of these scopes are dropped.
    std::vector<std::string> exclude_scopes;
  };

  /// `line` is used for error messages only.
  void add_artifact(Coordinate c, ReleaseDate released, std::size_t line = 0);
  void add_dependency(Coordinate from, Coordinate to, std::optional<std::string> scope, std::size_t line = 0);

  /// Resolves dependencies and builds the precedence chains. Warnings about
  /// skipped records are appended to `warnings` when it is non-null.
  DependencyGraph build(const Options& options, std::vector<std::string>* warnings = nullptr) &&;

private:
  struct PendingArtifact {
    Coordinate coordinate;
    ReleaseDate released;
    std::size_t line;
  };
  struct PendingDependency {
    Coordinate from;
    Coordinate to;
    std::optional<std::string> scope;
    std::size_t line;
  };

  std::vector<PendingArtifact> artifacts_;
  std::vector<PendingDependency> dependencies_;
};

/// Library-level elevation: an edge l1 -> l2 whose weight is the number of
/// distinct versions of l1 depending on at least one version of l2.
class LibraryGraph {
public:
  struct Edge {
    LibraryId from;
    LibraryId to;
    std::uint32_t weight;
  };

  LibraryGraph() = default;

  std::size_t node_count() const noexcept { return out_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Outgoing edges of l, ascending by target.
  std::span<const Edge> out_edges(LibraryId l) const;
  /// Incoming edges of l, ascending by source.
  std::vector<Edge> in_edges(LibraryId l) const;

  /// D(l): libraries l depends on.
  std::vector<LibraryId> dependencies(LibraryId l) const;
  /// Libraries that depend on l.
  std::vector<LibraryId> users(LibraryId l) const;

  std::optional<std::uint32_t> weight(LibraryId from, LibraryId to) const;
  /// Sum of incoming edge weights.
  std::uint64_t in_weight_sum(LibraryId l) const { return in_sum_.at(l.value); }
  /// Sum of outgoing edge weights.
  std::uint64_t out_weight_sum(LibraryId l) const { return out_sum_.at(l.value); }

  bool is_external(LibraryId l) const { return external_.at(l.value); }

private:
  friend LibraryGraph elevate(const DependencyGraph& g);

  std::vector<Edge> edges_;  // sorted by (from, to)
  std::vector<std::pair<std::size_t, std::size_t>> out_;  // [begin, end) into edges_
  std::vector<std::vector<std::size_t>> in_;              // indices into edges_
  std::vector<std::uint64_t> in_sum_;
  std::vector<std::uint64_t> out_sum_;
  std::vector<bool> external_;
};

LibraryGraph elevate(const DependencyGraph& g);

}  // namespace mvndiv

template <>
struct std::hash<mvndiv::VertexId> {
  std::size_t operator()(mvndiv::VertexId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};
