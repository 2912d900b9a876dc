#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "shadowlab/deciders/delta_graph.hpp"
#include "shadowlab/deciders/verdict.hpp"
#include "shadowlab/errors.hpp"

namespace shadowlab {

/// Walk graph plus a tracked-set law: after stepping to `next`, the tracked
/// set becomes advance(S) & allowed[next]. Starting sets are allowed[x].
struct TrackerSpec {
  const DeltaGraph* walk = nullptr;
  std::function<PointSet(const PointSet&)> advance;
  std::vector<PointSet> allowed;

  PointSet step(const PointSet& s, PointId next) const { return advance(s) & allowed[next]; }
};

inline constexpr std::size_t kDefaultStateBudget = 4'000'000;

/// Breadth-first exploration of a subset automaton. States are stored in
/// discovery order, so parent chains give shortest walks.
struct Exploration {
  static constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  std::vector<SubsetState> states;
  std::vector<std::size_t> parent;
  std::unordered_map<SubsetState, std::size_t, SubsetStateHash> index;
  std::optional<std::size_t> bad_from;
  std::optional<PointId> bad_next;

  std::vector<PointId> walk_to(std::size_t idx) const {
    std::vector<PointId> w;
    for (std::size_t i = idx; i != kRoot; i = parent[i]) w.push_back(states[i].node);
    std::reverse(w.begin(), w.end());
    return w;
  }
};

/// Explores from every start node. `violated(from, next, to_set)` is checked
/// on each transition; the first hit in BFS order stops the search. Empty
/// tracked sets are recorded but not expanded.
template <class Violated>
Exploration explore_subsets(const TrackerSpec& spec, Violated&& violated,
                            std::size_t budget = kDefaultStateBudget) {
  Exploration ex;
  auto add = [&](SubsetState s, std::size_t par) -> std::size_t {
    auto [it, fresh] = ex.index.emplace(s, ex.states.size());
    if (fresh) {
      if (ex.states.size() >= budget)
        throw BudgetError("state budget of " + std::to_string(budget) + " exhausted");
      ex.states.push_back(std::move(s));
      ex.parent.push_back(par);
    }
    return it->second;
  };
  for (PointId x = 0; x < spec.walk->size(); ++x) add(SubsetState{x, spec.allowed[x]}, Exploration::kRoot);
  for (std::size_t cur = 0; cur < ex.states.size(); ++cur) {
    if (ex.states[cur].set.empty()) continue;
    const PointId node = ex.states[cur].node;
    const PointSet image = spec.advance(ex.states[cur].set);
    for (PointId next : spec.walk->succ[node]) {
      PointSet to = image & spec.allowed[next];
      if (violated(ex.states[cur], next, to)) {
        ex.bad_from = cur;
        ex.bad_next = next;
        return ex;
      }
      add(SubsetState{next, std::move(to)}, cur);
    }
  }
  return ex;
}

/// For each explored state, whether the deterministic continuation along
/// `exact` (node -> exact[node]) reaches a state satisfying `merged` before
/// the tracked set empties. All continuation states must be explored.
template <class Merged>
std::vector<bool> merge_reachable(const TrackerSpec& spec, const Exploration& ex,
                                  const std::vector<PointId>& exact, Merged&& merged) {
  const std::size_t m = ex.states.size();
  enum : unsigned char { Unknown, Active, Good, Bad };
  std::vector<unsigned char> mark(m, Unknown);
  std::vector<std::size_t> chain;
  for (std::size_t s = 0; s < m; ++s) {
    if (mark[s] != Unknown) continue;
    chain.clear();
    std::size_t cur = s;
    unsigned char outcome = Bad;
    while (true) {
      if (mark[cur] == Good || mark[cur] == Bad) {
        outcome = mark[cur];
        break;
      }
      if (mark[cur] == Active) {  // cycle without a merge
        outcome = Bad;
        break;
      }
      const SubsetState& st = ex.states[cur];
      if (st.set.empty()) {
        outcome = Bad;
        mark[cur] = Bad;
        break;
      }
      if (merged(st)) {
        outcome = Good;
        mark[cur] = Good;
        break;
      }
      mark[cur] = Active;
      chain.push_back(cur);
      const PointId nx = exact[st.node];
      auto it = ex.index.find(SubsetState{nx, spec.step(st.set, nx)});
      if (it == ex.index.end()) throw std::logic_error("exact continuation left the explored states");
      cur = it->second;
    }
    for (auto c : chain) mark[c] = outcome;
  }
  std::vector<bool> good(m);
  for (std::size_t s = 0; s < m; ++s) good[s] = mark[s] == Good;
  return good;
}

// ------------------------------------------------------------ eventual

/// Tracked-set law for eventual properties. A fresh set spawned at walk
/// position i is reach[min(i, last)] & allowed[x_i]; reach must be a
/// decreasing chain that is constant from its last entry on.
struct EventualSpec {
  TrackerSpec tracker;
  std::vector<PointSet> reach;
};

struct EventualExploration {
  std::vector<EventualConfig> configs;
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::pair<std::size_t, bool>>> edges;  // (target, death)
};

inline EventualExploration explore_eventual(const EventualSpec& spec, std::size_t budget = kDefaultStateBudget) {
  EventualExploration ex;
  std::unordered_map<EventualConfig, std::size_t, EventualConfigHash> index;
  const std::size_t last = spec.reach.size() - 1;
  auto add = [&](EventualConfig c, std::size_t par) {
    auto [it, fresh] = index.emplace(c, ex.configs.size());
    if (fresh) {
      if (ex.configs.size() >= budget)
        throw BudgetError("configuration budget of " + std::to_string(budget) + " exhausted");
      ex.configs.push_back(std::move(c));
      ex.parent.push_back(par);
      ex.edges.emplace_back();
    }
    return it->second;
  };
  const auto& tr = spec.tracker;
  for (PointId x = 0; x < tr.walk->size(); ++x)
    add(EventualConfig{x, spec.reach[0] & tr.allowed[x], 0}, Exploration::kRoot);
  for (std::size_t cur = 0; cur < ex.configs.size(); ++cur) {
    const PointId node = ex.configs[cur].node;
    const std::size_t age = std::min(ex.configs[cur].age + 1, last);
    const PointSet image = tr.advance(ex.configs[cur].tracked);
    for (PointId next : tr.walk->succ[node]) {
      PointSet t = image & tr.allowed[next];
      const bool death = t.empty();
      if (death) t = spec.reach[age] & tr.allowed[next];
      std::size_t to = add(EventualConfig{next, std::move(t), age}, cur);
      ex.edges[cur].emplace_back(to, death);
    }
  }
  return ex;
}

/// Shortest path of configurations from `from` to `to` (inclusive), restricted
/// to configurations marked in `allowed` when given; empty if unreachable.
inline std::vector<std::size_t> config_path(const EventualExploration& ex, std::size_t from, std::size_t to,
                                            const std::vector<bool>* allowed = nullptr) {
  if (from == to) return {from};
  std::vector<std::size_t> par(ex.configs.size(), Exploration::kRoot);
  std::vector<bool> seen(ex.configs.size(), false);
  std::vector<std::size_t> queue{from};
  seen[from] = true;
  for (std::size_t qi = 0; qi < queue.size() && !seen[to]; ++qi) {
    const std::size_t c = queue[qi];
    for (const auto& e : ex.edges[c]) {
      const std::size_t w = e.first;
      if (seen[w] || (allowed && !(*allowed)[w])) continue;
      seen[w] = true;
      par[w] = c;
      queue.push_back(w);
    }
  }
  if (!seen[to]) return {};
  std::vector<std::size_t> path;
  for (std::size_t c = to; c != from; c = par[c]) path.push_back(c);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Decides "every walk sees finitely many deaths". On failure returns a lasso
/// whose loop crosses a death edge.
inline Verdict decide_eventual_engine(const EventualSpec& spec, std::size_t budget = kDefaultStateBudget) {
  EventualExploration ex = explore_eventual(spec, budget);
  const std::size_t m = ex.configs.size();
  SccResult scc = strongly_connected(m, [&](std::size_t v, auto&& emit) {
    for (auto [w, d] : ex.edges[v]) {
      (void)d;
      emit(w);
    }
  });
  EventualWitness wit;
  for (std::size_t u = 0; u < m; ++u)
    for (auto [v, death] : ex.edges[u]) {
      if (!death) continue;
      if (scc.comp[u] != scc.comp[v]) {
        wit.death_edges.emplace_back(u, v);
        continue;
      }
      // Stem: BFS parents to u. Loop: u -> v, then back to u inside the SCC.
      std::vector<bool> in_comp(m);
      for (std::size_t c = 0; c < m; ++c) in_comp[c] = scc.comp[c] == scc.comp[u];
      std::vector<std::size_t> back = config_path(ex, v, u, &in_comp);
      std::vector<std::size_t> stem;
      for (std::size_t c = u; c != Exploration::kRoot; c = ex.parent[c]) stem.push_back(c);
      std::reverse(stem.begin(), stem.end());
      Counterexample cex;
      for (auto c : stem) cex.walk.push_back(ex.configs[c].node);
      cex.loop_start = cex.walk.size() - 1;
      // back = v ... u; append v .. (predecessor of u).
      for (std::size_t k = 0; k + 1 < back.size(); ++k) cex.walk.push_back(ex.configs[back[k]].node);
      return Verdict::fail(std::move(cex), m);
    }
  wit.configs = std::move(ex.configs);
  return Verdict::pass(std::move(wit), m);
}

}  // namespace shadowlab
