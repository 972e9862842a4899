#include "mvndiv/metrics.hpp"

#include <algorithm>
#include <deque>

#include "mvndiv/errors.hpp"

namespace mvndiv {

std::string_view to_string(VersionStatus s) {
  switch (s) {
    case VersionStatus::Active: return "Active";
    case VersionStatus::PassiveNonDormant: return "PassiveNonDormant";
    case VersionStatus::Dormant: return "Dormant";
  }
  return "?";
}

std::string_view to_string(LibraryStatus s) {
  switch (s) {
    case LibraryStatus::Active: return "ActiveLib";
    case LibraryStatus::Passive: return "PassiveLib";
    case LibraryStatus::Dormant: return "DormantLib";
  }
  return "?";
}

std::string_view to_string(TimelinessClass c) {
  switch (c) {
    case TimelinessClass::UnderTimely: return "UnderTimely";
    case TimelinessClass::Timely: return "Timely";
    case TimelinessClass::OverTimely: return "OverTimely";
  }
  return "?";
}

ActivityTable ActivityTable::compute(const DependencyGraph& g) {
  ActivityTable t;
  t.graph_ = &g;
  const auto n = g.vertex_count();

  // Everything reachable from a latest version by a path of length >= 1.
  std::vector<bool> reached(n, false);
  std::deque<VertexId> queue;
  const auto latests = g.latests();
  for (VertexId l : latests)
    for (VertexId w : g.direct_dependencies(l))
      if (!reached[w.value]) {
        reached[w.value] = true;
        queue.push_back(w);
      }
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : g.direct_dependencies(u))
      if (!reached[w.value]) {
        reached[w.value] = true;
        queue.push_back(w);
      }
  }

  // A latest version reached only through a cycle back to itself is not in
  // its own dependency tree; it is active only if another latest reaches it.
  for (VertexId l : latests) {
    if (!reached[l.value]) continue;
    auto up = g.users(l, true);
    bool other = std::any_of(up.begin(), up.end(), [&](VertexId u) { return u != l && g.is_latest(u); });
    reached[l.value] = other;
  }

  t.status_.assign(n, std::nullopt);
  for (std::uint32_t i = 0; i < n; ++i) {
    VertexId v{i};
    if (g.vertex(v).external) continue;
    VersionStatus s;
    if (reached[i])
      s = VersionStatus::Active;
    else if (g.direct_users(v).empty())
      s = VersionStatus::Dormant;
    else
      s = VersionStatus::PassiveNonDormant;
    t.status_[i] = s;
    if (s == VersionStatus::Active) t.active_.push_back(v);
  }

  t.library_status_.assign(g.library_count(), std::nullopt);
  for (std::uint32_t l = 0; l < g.library_count(); ++l) {
    const auto& chain = g.library(LibraryId{l}).chain;
    if (chain.empty()) continue;
    bool any_active = false;
    bool all_dormant = true;
    for (VertexId v : chain) {
      auto s = *t.status_[v.value];
      any_active |= s == VersionStatus::Active;
      all_dormant &= s == VersionStatus::Dormant;
    }
    t.library_status_[l] = any_active    ? LibraryStatus::Active
                           : all_dormant ? LibraryStatus::Dormant
                                         : LibraryStatus::Passive;
  }
  return t;
}

VersionStatus ActivityTable::status(VertexId v) const {
  const auto& s = status_.at(v.value);
  if (!s) throw DomainError(graph_->vertex(v).coordinate.str() + " is an external stub");
  return *s;
}

LibraryStatus ActivityTable::library_status(LibraryId l) const {
  if (l.value >= library_status_.size()) throw LookupError("unknown library id " + std::to_string(l.value));
  const auto& s = library_status_[l.value];
  if (!s) throw LookupError("library " + graph_->library(l).name + " has no released versions");
  return *s;
}

std::size_t ActivityTable::count(VersionStatus s) const {
  return static_cast<std::size_t>(std::count(status_.begin(), status_.end(), std::optional{s}));
}

std::size_t ActivityTable::count(LibraryStatus s) const {
  return static_cast<std::size_t>(std::count(library_status_.begin(), library_status_.end(), std::optional{s}));
}

VersionStatus activity_status(const DependencyGraph& g, VertexId v) { return ActivityTable::compute(g).status(v); }

LibraryStatus library_status(const DependencyGraph& g, LibraryId l) {
  return ActivityTable::compute(g).library_status(l);
}

std::optional<Lifespan> lifespan(const DependencyGraph& g, const ActivityTable& activity, VertexId v) {
  auto status = activity.status(v);
  if (status == VersionStatus::Dormant) return std::nullopt;
  Lifespan ls;
  ls.start = *g.vertex(v).released;
  if (status == VersionStatus::Active) {
    ls.end = g.snapshot();
    return ls;
  }
  std::optional<ReleaseDate> last;
  for (VertexId i : g.users(v, true)) {
    auto succ = g.next(i);
    if (!succ) continue;  // unreachable for passive versions: no transitive user is latest
    auto r = *g.vertex(*succ).released;
    if (!last || r > *last) last = r;
  }
  ls.end = last.value_or(ls.start);
  if (ls.end < ls.start) {
    ls.end = ls.start;
    ls.clamped = true;
  }
  return ls;
}

TimelinessCalculator::TimelinessCalculator(const DependencyGraph& g, const ActivityTable& activity,
                                           TimelinessOptions options)
    : graph_(&g), activity_(&activity), options_(options), usage_dates_(g.library_count()) {
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
    VertexId v{i};
    const auto& rec = g.vertex(v);
    if (rec.external) continue;
    std::vector<std::uint32_t> libs;
    for (VertexId w : g.direct_dependencies(v)) libs.push_back(g.vertex(w).library.value);
    std::sort(libs.begin(), libs.end());
    libs.erase(std::unique(libs.begin(), libs.end()), libs.end());
    for (auto l : libs) usage_dates_[l].push_back(*rec.released);
  }
  for (auto& dates : usage_dates_) std::sort(dates.begin(), dates.end());
}

std::size_t TimelinessCalculator::usages_between(LibraryId l, ReleaseDate from, ReleaseDate to) const {
  const auto& dates = usage_dates_.at(l.value);
  auto lo = std::lower_bound(dates.begin(), dates.end(), from);
  auto hi = std::upper_bound(dates.begin(), dates.end(), to);
  return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

TimelinessResult TimelinessCalculator::evaluate(VertexId v) const {
  const auto& g = *graph_;
  TimelinessResult r;
  auto classify = [&] {
    auto num = r.numerator;
    auto den = r.denominator;
    if (den == 0 || num < den)
      r.cls = TimelinessClass::UnderTimely;
    else if (num == den)
      r.cls = TimelinessClass::Timely;
    else
      r.cls = TimelinessClass::OverTimely;
    return r;
  };

  if (activity_->status(v) == VersionStatus::Dormant) {
    r.numerator = 0;
    r.denominator = 1;
    return classify();
  }
  if (!g.previous(v)) {
    r.numerator = 1;
    r.denominator = 1;
    return classify();
  }

  const auto released = *g.vertex(v).released;
  std::optional<ReleaseDate> end;
  for (VertexId i : g.next_all(v)) {
    auto ri = *g.vertex(i).released;
    if (ri > released && (!end || ri < *end)) end = ri;
  }
  ReleaseDate until = end.value_or(g.snapshot());
  r.period = std::pair{released, until};

  auto users = g.direct_users(v);
  if (options_.period_users_only) {
    r.numerator = static_cast<std::uint64_t>(std::count_if(users.begin(), users.end(), [&](VertexId u) {
      auto ru = *g.vertex(u).released;
      return ru >= released && ru <= until;
    }));
  } else {
    r.numerator = users.size();
  }
  r.denominator = usages_between(g.vertex(v).library, released, until);
  if (r.denominator == 0) r.numerator = 0;
  return classify();
}

TimelinessResult timeliness(const DependencyGraph& g, VertexId v) {
  auto activity = ActivityTable::compute(g);
  return TimelinessCalculator(g, activity).evaluate(v);
}

}  // namespace mvndiv
