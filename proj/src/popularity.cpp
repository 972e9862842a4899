#include <cmath>
#include <sstream>

#include "mvndiv/errors.hpp"
#include "mvndiv/metrics.hpp"
#include "mvndiv/parallel.hpp"

namespace mvndiv {
namespace {

// Jacobi iteration of x = base + d * M x where `contribution(v, x)` returns
// (M x)[v]. Starts from `x` and stops once the L1 update is within tolerance.
template <typename Contribution>
void iterate(std::vector<double>& x, const PopularityConfig& cfg, PopularityScores& out, bool literal,
             Contribution&& contribution) {
  const double base = 1.0 - cfg.damping;
  std::vector<double> next(x.size());
  double previous = 0.0;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    parallel_for(x.size(), cfg.threads,
                 [&](std::size_t v) { next[v] = base + cfg.damping * contribution(v, x); });
    double residual = 0.0;
    for (std::size_t v = 0; v < x.size(); ++v) residual += std::abs(next[v] - x[v]);
    x.swap(next);
    previous = out.residual;
    out.iterations = it;
    out.residual = residual;
    if (!std::isfinite(residual)) break;
    if (residual <= cfg.tolerance) return;
  }

  // Not converged. A residual that is not shrinking means there is no fixed point.
  bool diverged = !std::isfinite(out.residual) || out.residual >= previous;
  std::ostringstream msg;
  msg << "popularity did not converge after " << out.iterations << " iterations (residual " << out.residual << ")";
  if (diverged && literal) msg << "; the literal recurrence diverges on this graph, use normalized mode";
  throw ConvergenceError(msg.str(), out.residual, out.iterations, diverged);
}

}  // namespace

void PopularityConfig::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) throw ConfigError("damping must lie in (0, 1)");
  if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
}

PopularityScores version_popularity(const DependencyGraph& g, const PopularityConfig& cfg) {
  cfg.validate();
  const auto n = g.vertex_count();
  const double base = 1.0 - cfg.damping;
  PopularityScores out;
  out.values.assign(n, base);

  if (cfg.mode == PopularityMode::Normalized) {
    iterate(out.values, cfg, out, false, [&](std::size_t v, const std::vector<double>& x) {
      double sum = 0.0;
      for (VertexId i : g.direct_users(VertexId{static_cast<std::uint32_t>(v)}))
        sum += x[i.value] / static_cast<double>(g.direct_dependencies(i).size());
      return sum;
    });
    return out;
  }

  // Literal mode: users before the versions they use.
  std::vector<std::size_t> pending(n);
  std::vector<VertexId> ready;
  for (std::uint32_t v = 0; v < n; ++v) {
    pending[v] = g.direct_users(VertexId{v}).size();
    if (pending[v] == 0) ready.push_back(VertexId{v});
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    VertexId v = ready.back();
    ready.pop_back();
    ++done;
    double sum = 0.0;
    for (VertexId i : g.direct_users(v)) sum += out.values[i.value];
    out.values[v.value] = base + cfg.damping * sum;
    for (VertexId w : g.direct_dependencies(v))
      if (--pending[w.value] == 0) ready.push_back(w);
  }
  if (done == n) return out;

  // Cyclic: the acyclic part is already exact and stays fixed under iteration.
  iterate(out.values, cfg, out, true, [&](std::size_t v, const std::vector<double>& x) {
    double sum = 0.0;
    for (VertexId i : g.direct_users(VertexId{static_cast<std::uint32_t>(v)})) sum += x[i.value];
    return sum;
  });
  return out;
}

PopularityScores library_popularity(const LibraryGraph& gl, const PopularityConfig& cfg) {
  cfg.validate();
  const auto n = gl.node_count();

  // Per user library u: denominators of the in/out factors over D(u).
  std::vector<double> in_den(n, 0.0), out_den(n, 0.0), fanout(n, 0.0);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (const auto& e : gl.out_edges(LibraryId{u})) {
      in_den[u] += static_cast<double>(gl.in_weight_sum(e.to));
      out_den[u] += static_cast<double>(gl.out_weight_sum(e.to));
      fanout[u] += 1.0;
    }
  }
  auto factor = [&](double num, double den, std::uint32_t u) { return den > 0.0 ? num / den : 1.0 / fanout[u]; };

  // Incoming contributions precomputed as (user, coefficient) lists.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> incoming(n);
  for (std::uint32_t l = 0; l < n; ++l) {
    LibraryId lib{l};
    for (const auto& e : gl.in_edges(lib)) {
      auto u = e.from.value;
      double cin = factor(static_cast<double>(gl.in_weight_sum(lib)), in_den[u], u);
      double cout = factor(static_cast<double>(gl.out_weight_sum(lib)), out_den[u], u);
      incoming[l].emplace_back(u, cin * cout);
    }
  }

  PopularityScores out;
  out.values.assign(n, 1.0 - cfg.damping);
  iterate(out.values, cfg, out, false, [&](std::size_t l, const std::vector<double>& x) {
    double sum = 0.0;
    for (auto [u, c] : incoming[l]) sum += x[u] * c;
    return sum;
  });
  return out;
}

}  // namespace mvndiv
