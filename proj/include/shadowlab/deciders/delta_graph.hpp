#pragma once

#include <cstddef>
#include <vector>

#include "shadowlab/point_set.hpp"
#include "shadowlab/space.hpp"

namespace shadowlab {

/// Edge i -> j iff d(f(i), j) < delta. Infinite walks are the delta-pseudo-orbits.
struct DeltaGraph {
  std::vector<PointSet> succ_set;
  std::vector<std::vector<PointId>> succ;

  std::size_t size() const { return succ.size(); }
  bool has_edge(PointId i, PointId j) const { return succ_set[i].test(j); }
};

inline DeltaGraph delta_graph(const FiniteMetricSystem& sys, const Rational& delta) {
  if (delta <= 0) throw DomainError("delta must be positive");
  DeltaGraph g;
  const auto cut = sys.space().rank_cut(delta);
  for (PointId i = 0; i < sys.size(); ++i) {
    g.succ_set.push_back(sys.space().ball_by_cut(sys.f(i), cut));
    g.succ.push_back(g.succ_set.back().members());
  }
  return g;
}

/// Graph whose successor sets are given directly (used for lifted walks).
inline DeltaGraph graph_from_succ(std::vector<PointSet> succ_set) {
  DeltaGraph g;
  g.succ_set = std::move(succ_set);
  for (const auto& s : g.succ_set) g.succ.push_back(s.members());
  return g;
}

inline bool is_pseudo_orbit(const FiniteMetricSystem& sys, const std::vector<PointId>& walk,
                            const Rational& delta) {
  for (std::size_t i = 0; i < walk.size(); ++i)
    if (walk[i] >= sys.size()) return false;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i)
    if (!(sys.d(sys.f(walk[i]), walk[i + 1]) < delta)) return false;
  return true;
}

/// Strongly connected components (iterative Tarjan). comp[v] is numbered in
/// reverse topological order: edges go from higher to lower or equal ids.
struct SccResult {
  std::vector<std::size_t> comp;
  std::size_t count = 0;
  /// Whether the component contains at least one edge (a cycle).
  std::vector<bool> cyclic;
};

template <class SuccFn>
SccResult strongly_connected(std::size_t n, SuccFn&& successors) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  SccResult r;
  r.comp.assign(n, kUnset);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v) successors(v, [&](std::size_t w) { adj[v].push_back(w); });
  std::size_t next = 0;
  struct Frame {
    std::size_t v, edge;
  };
  std::vector<Frame> call;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      if (fr.edge < adj[fr.v].size()) {
        std::size_t w = adj[fr.v][fr.edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
        continue;
      }
      const std::size_t v = fr.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        while (true) {
          std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          r.comp[w] = r.count;
          if (w == v) break;
        }
        ++r.count;
      }
    }
  }
  r.cyclic.assign(r.count, false);
  for (std::size_t v = 0; v < n; ++v)
    for (auto w : adj[v])
      if (r.comp[v] == r.comp[w]) r.cyclic[r.comp[v]] = true;
  return r;
}

}  // namespace shadowlab
