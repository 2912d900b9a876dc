#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "shadowlab/deciders/delta_graph.hpp"
#include "shadowlab/deciders/verdict.hpp"
#include "shadowlab/errors.hpp"

namespace shadowlab {

inline constexpr std::size_t kLassoProductBudget = 2'000'000;

/// Shared by strong orbital shadowing (up = exact orbits, phi = id) and soALP
/// (up = D-walks in the domain). near[y] lists the upstairs points u with
/// d(phi(u), y) below the closeness threshold.
struct LassoCheckSpec {
  const DeltaGraph* down = nullptr;
  const DeltaGraph* up = nullptr;
  std::vector<PointSet> near;
};

/// Whether some infinite up-walk (u_i) matches the lasso y = walk with loop
/// from `s` in the strong orbital sense: for every N the images of {u_i : i >= N}
/// and {y_i : i >= N} are within the threshold in the Hausdorff sense.
inline bool lasso_matched(const LassoCheckSpec& spec, const std::vector<PointId>& walk, std::size_t s) {
  const std::size_t len = walk.size();
  const std::size_t n_up = spec.up->size();
  if (s >= 64) throw DomainError("lasso stem longer than 63");
  // tail_near[p]: upstairs points close to some y_j with j >= min(p, s).
  std::vector<PointSet> tail_near(len, PointSet(n_up));
  for (std::size_t p = len; p-- > 0;) {
    tail_near[p] = spec.near[walk[p]];
    if (p + 1 < len) tail_near[p] |= tail_near[p + 1];
  }
  for (std::size_t p = s; p < len; ++p) tail_near[p] = tail_near[s];

  struct Node {
    PointId u;
    std::uint32_t pos;
    std::uint64_t mask;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& x) const {
      return (std::size_t(x.mask) * 1000003u + x.pos) * 10007u + x.u;
    }
  };
  std::vector<Node> nodes;
  std::unordered_map<Node, std::size_t, NodeHash> index;
  std::vector<std::vector<std::size_t>> adj;
  auto settle = [&](PointId u, std::size_t pos, std::uint64_t mask) {
    if (pos < s) mask |= std::uint64_t{1} << pos;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      const unsigned j = static_cast<unsigned>(__builtin_ctzll(m));
      if (spec.near[walk[j]].test(u)) mask &= ~(std::uint64_t{1} << j);
    }
    return Node{u, static_cast<std::uint32_t>(pos), mask};
  };
  auto add = [&](const Node& x) {
    auto [it, fresh] = index.emplace(x, nodes.size());
    if (fresh) {
      if (nodes.size() >= kLassoProductBudget) throw BudgetError("lasso product exceeds its node budget");
      nodes.push_back(x);
      adj.emplace_back();
    }
    return it->second;
  };
  for (PointId u = 0; u < n_up; ++u)
    if (tail_near[0].test(u)) add(settle(u, 0, 0));
  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    const Node x = nodes[cur];
    const std::size_t pos = x.pos + 1 == len ? s : x.pos + 1;
    for (PointId w : spec.up->succ[x.u]) {
      if (!tail_near[pos].test(w)) continue;
      std::size_t to = add(settle(w, pos, x.mask));
      adj[cur].push_back(to);
    }
  }
  SccResult scc = strongly_connected(nodes.size(), [&](std::size_t v, auto&& emit) {
    for (auto w : adj[v]) emit(w);
  });
  // Per component: cleared obligations and which loop points get approached.
  std::vector<bool> bad(scc.count, false);
  std::vector<PointSet> covered(scc.count, PointSet(len));
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const std::size_t c = scc.comp[v];
    if (nodes[v].mask != 0 || nodes[v].pos < s) bad[c] = true;
    for (std::size_t l = s; l < len; ++l)
      if (spec.near[walk[l]].test(nodes[v].u)) covered[c].set(l);
  }
  for (std::size_t c = 0; c < scc.count; ++c) {
    if (!scc.cyclic[c] || bad[c]) continue;
    bool all = true;
    for (std::size_t l = s; l < len && all; ++l) all = covered[c].test(l);
    if (all) return true;
  }
  return false;
}

inline constexpr std::size_t kDefaultLassoBudget = 200'000;

/// Enumerates down-lassos by increasing length up to `horizon` nodes and
/// reports the first one no up-walk matches.
inline BoundedVerdict refute_by_lassos(const LassoCheckSpec& spec, std::size_t horizon,
                                       std::size_t lasso_budget = kDefaultLassoBudget) {
  if (horizon == 0) throw DomainError("horizon must be at least 1");
  if (horizon > 64) throw DomainError("lasso horizon is limited to 64 nodes");
  BoundedVerdict out;
  out.horizon = horizon;
  const DeltaGraph& g = *spec.down;
  std::vector<PointId> walk;
  bool stop = false;
  // Depth-first over walks of exactly `len` nodes.
  auto dfs = [&](auto&& self, std::size_t len) -> void {
    if (stop) return;
    if (walk.size() == len) {
      for (std::size_t s = 0; s < len && !stop; ++s) {
        if (!g.has_edge(walk.back(), walk[s])) continue;
        if (out.lassos_checked >= lasso_budget) {
          out.budget_exhausted = true;
          stop = true;
          return;
        }
        ++out.lassos_checked;
        if (!lasso_matched(spec, walk, s)) {
          out.status = BoundedVerdict::Status::Refuted;
          out.counterexample = Counterexample{walk, s, false, {}};
          stop = true;
        }
      }
      return;
    }
    for (PointId nx : g.succ[walk.back()]) {
      walk.push_back(nx);
      self(self, len);
      walk.pop_back();
      if (stop) return;
    }
  };
  for (std::size_t len = 1; len <= horizon && !stop; ++len)
    for (PointId x = 0; x < g.size() && !stop; ++x) {
      walk.assign(1, x);
      dfs(dfs, len);
    }
  return out;
}

}  // namespace shadowlab
