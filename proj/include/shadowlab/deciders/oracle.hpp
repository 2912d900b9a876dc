#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shadowlab/deciders/delta_graph.hpp"
#include "shadowlab/deciders/property.hpp"
#include "shadowlab/deciders/verdict.hpp"
#include "shadowlab/errors.hpp"

namespace shadowlab {

/// Bounded brute-force decision. `horizon` counts steps: walks have at most
/// horizon + 1 points. Candidate shadowing points are checked by iterating f.
struct OracleResult {
  bool holds = true;
  std::size_t horizon = 0;
  /// Horizon at which the bounded answer provably equals the exact one;
  /// absent where no such bound is known.
  std::optional<std::size_t> required_horizon;
  bool certified = false;
  std::optional<Counterexample> counterexample;
  std::size_t states = 0;
};

inline constexpr std::size_t kDefaultOracleBudget = 2'000'000;

namespace detail {

/// orbit[z][k] = f^k(z) for k <= len.
inline std::vector<std::vector<PointId>> orbit_table(const FiniteMetricSystem& sys, std::size_t len) {
  std::vector<std::vector<PointId>> t(sys.size());
  for (PointId z = 0; z < sys.size(); ++z) {
    t[z].push_back(z);
    for (std::size_t k = 0; k < len; ++k) t[z].push_back(sys.f(t[z].back()));
  }
  return t;
}

inline bool close(const FiniteMetricSystem& sys, PointId a, PointId b, const Rational& eps) {
  return sys.d(a, b) < eps;
}

/// Layered search over (x_i, Z_i), Z_i the candidate starts that satisfy the
/// property's constraint on x_0..x_i. Equal pairs within a layer are merged.
struct LayerSearch {
  struct Node {
    PointId x;
    PointSet z;
    std::size_t parent;
    std::size_t depth;
  };
  std::vector<Node> nodes;

  std::vector<PointId> walk_to(std::size_t i) const {
    std::vector<PointId> w;
    for (; i != static_cast<std::size_t>(-1); i = nodes[i].parent) w.push_back(nodes[i].x);
    std::reverse(w.begin(), w.end());
    return w;
  }
};

/// `start(x)` gives Z_0; `refine(Z, depth_of_next, next)` gives Z_{i+1};
/// `bad(node, next)` flags a failing transition before refinement; `dead(node)`
/// flags a failing state. Returns the failing walk, if any.
template <class Start, class Refine, class BadStep, class Dead>
std::optional<std::vector<PointId>> layer_search(const FiniteMetricSystem& sys, const DeltaGraph& g,
                                                 std::size_t horizon, std::size_t budget, LayerSearch& ls,
                                                 Start&& start, Refine&& refine, BadStep&& bad, Dead&& dead) {
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  auto push = [&](LayerSearch::Node nd) {
    if (ls.nodes.size() >= budget) throw BudgetError("oracle budget of " + std::to_string(budget) + " exhausted");
    ls.nodes.push_back(std::move(nd));
  };
  std::size_t layer_begin = 0;
  for (PointId x = 0; x < sys.size(); ++x) push({x, start(x), kRoot, 0});
  for (std::size_t depth = 0;; ++depth) {
    const std::size_t layer_end = ls.nodes.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      if (dead(ls.nodes[i])) return ls.walk_to(i);
    if (depth == horizon) return std::nullopt;
    std::unordered_map<SubsetState, std::size_t, SubsetStateHash> seen;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (PointId nx : g.succ[ls.nodes[i].x]) {
        if (bad(ls.nodes[i], nx)) {
          auto w = ls.walk_to(i);
          w.push_back(nx);
          return w;
        }
        PointSet z = refine(ls.nodes[i].z, depth + 1, nx);
        SubsetState key{nx, z};
        if (seen.count(key)) continue;
        seen.emplace(std::move(key), ls.nodes.size());
        push({nx, std::move(z), i, depth + 1});
      }
    }
    layer_begin = layer_end;
  }
}

/// Visits every lasso with at most `max_nodes` points: walk[0..len) plus the
/// closing edge back to walk[s]. `check(walk, s)` returns false to refute.
template <class Check>
std::optional<Counterexample> enumerate_lassos(const DeltaGraph& g, std::size_t max_nodes, std::size_t budget,
                                               std::size_t& count, Check&& check) {
  std::vector<PointId> walk;
  std::optional<Counterexample> found;
  auto dfs = [&](auto&& self) -> void {
    for (std::size_t s = 0; s < walk.size() && !found; ++s) {
      if (!g.has_edge(walk.back(), walk[s])) continue;
      if (++count > budget) throw BudgetError("oracle lasso budget of " + std::to_string(budget) + " exhausted");
      if (!check(walk, s)) found = Counterexample{walk, s, false, {}};
    }
    if (found || walk.size() == max_nodes) return;
    for (PointId nx : g.succ[walk.back()]) {
      walk.push_back(nx);
      self(self);
      walk.pop_back();
      if (found) return;
    }
  };
  for (PointId x = 0; x < g.size() && !found; ++x) {
    walk.assign(1, x);
    dfs(dfs);
  }
  return found;
}

/// Position after `pos` in a lasso of length len looping to s.
inline std::size_t lasso_next(std::size_t pos, std::size_t len, std::size_t s) { return pos + 1 == len ? s : pos + 1; }

/// Whether the orbit of u, started at lasso position pos, stays eps-close to
/// the lasso forever. The pair (position, point) is deterministic.
inline bool tracks_lasso_from(const FiniteMetricSystem& sys, const std::vector<PointId>& walk, std::size_t s,
                              std::size_t pos, PointId u, const Rational& eps) {
  const std::size_t steps = (walk.size() + 1) * (sys.size() + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (!close(sys, u, walk[pos], eps)) return false;
    u = sys.f(u);
    pos = lasso_next(pos, walk.size(), s);
  }
  return true;
}

}  // namespace detail

/// Brute-force bounded check of one property at fixed thresholds.
inline OracleResult oracle(const FiniteMetricSystem& sys, Property p, const ThresholdPair& tp, std::size_t horizon,
                           std::size_t budget = kDefaultOracleBudget) {
  if (horizon == 0) throw DomainError("oracle horizon must be at least 1");
  const std::size_t n = sys.size();
  const DeltaGraph g = delta_graph(sys, tp.delta);
  const std::size_t tail = n * n + n;
  const auto orb = detail::orbit_table(sys, horizon + tail + 1);
  OracleResult r;
  r.horizon = horizon;
  const Rational& eps = tp.eps;
  auto set_cex = [&](std::optional<std::vector<PointId>> w, bool exact_tail = false) {
    if (w) {
      r.holds = false;
      r.counterexample = Counterexample{std::move(*w), {}, exact_tail, {}};
    }
  };
  auto near_at = [&](PointId x, std::size_t depth) {
    PointSet z(n);
    for (PointId c = 0; c < n; ++c)
      if (detail::close(sys, orb[c][depth], x, eps)) z.set(c);
    return z;
  };
  auto never = [](const auto&...) { return false; };
  auto empty_z = [](const detail::LayerSearch::Node& nd) { return nd.z.empty(); };
  detail::LayerSearch ls;

  switch (p) {
    case Property::Shadowing:
    case Property::HShadowing:
    case Property::Weak1:
    case Property::SLimit2: {
      auto refine_shadow = [&](const PointSet& z, std::size_t depth, PointId nx) { return z & near_at(nx, depth); };
      if (p == Property::Shadowing) {
        set_cex(detail::layer_search(sys, g, horizon, budget, ls, [&](PointId x) { return near_at(x, 0); },
                                     refine_shadow, never, empty_z));
        r.required_horizon = decide_shadowing(sys, tp).states_explored + 1;
      } else if (p == Property::HShadowing) {
        // The walk x_0..x_i, nx needs a start close on x_0..x_i that hits nx exactly.
        auto misses = [&](const detail::LayerSearch::Node& nd, PointId nx) {
          bool hit = false;
          nd.z.for_each([&](PointId c) { hit = hit || orb[c][nd.depth + 1] == nx; });
          return !hit;
        };
        set_cex(detail::layer_search(sys, g, horizon, budget, ls, [&](PointId x) { return near_at(x, 0); },
                                     refine_shadow, misses, never));
        r.required_horizon = decide_h_shadowing(sys, tp).states_explored + 1;
      } else if (p == Property::Weak1) {
        auto near_orbit = [&](PointId x) {
          PointSet z(n);
          for (PointId c = 0; c < n; ++c)
            for (std::size_t k = 0; k <= n; ++k)
              if (detail::close(sys, orb[c][k], x, eps)) {
                z.set(c);
                break;
              }
          return z;
        };
        set_cex(detail::layer_search(
            sys, g, horizon, budget, ls, near_orbit,
            [&](const PointSet& z, std::size_t, PointId nx) { return z & near_orbit(nx); }, never, empty_z));
        r.required_horizon = decide_weak1(sys, tp).states_explored + 1;
      } else {
        // Continue exactly from x_i; some candidate must stay close and meet the walk.
        auto no_merge = [&](const detail::LayerSearch::Node& nd) {
          bool ok = false;
          nd.z.for_each([&](PointId c) {
            if (ok) return;
            PointId x = nd.x;
            for (std::size_t k = 0; k <= tail; ++k) {
              const PointId u = orb[c][nd.depth + k];
              if (!detail::close(sys, u, x, eps)) return;
              if (u == x) {
                ok = true;
                return;
              }
              x = sys.f(x);
            }
          });
          return !ok;
        };
        auto w = detail::layer_search(sys, g, horizon, budget, ls, [&](PointId x) { return near_at(x, 0); },
                                      refine_shadow, never, no_merge);
        set_cex(std::move(w), true);
        r.required_horizon = decide_slimit_condition2(sys, tp).states_explored + 1;
      }
      r.states = ls.nodes.size();
      break;
    }

    case Property::Inverse: {
      detail::require_surjective(sys);
      std::size_t max_period = 1;
      for (PointId x = 0; x < n; ++x) {
        const std::size_t period = orbit_shape(sys, x).period;
        max_period = std::max(max_period, period);
        bool tracked = false;
        for (PointId y = 0; y < n && !tracked; ++y) {
          PointSet reach = PointSet::singleton(n, y);
          bool ok = true;
          for (std::size_t t = 0; t <= horizon && ok; ++t) {
            ++r.states;
            reach.for_each([&](PointId w) { ok = ok && detail::close(sys, w, orb[x][t], eps); });
            PointSet next(n);
            reach.for_each([&](PointId w) { next |= g.succ_set[w]; });
            reach = std::move(next);
          }
          tracked = ok;
        }
        if (!tracked) {
          r.holds = false;
          r.counterexample = Counterexample{{}, {}, false, x};
          break;
        }
      }
      r.required_horizon = n * max_period + 1;
      break;
    }

    case Property::Eventual:
    case Property::Orbital:
    case Property::Weak2: {
      std::vector<PointSet> orbits;
      for (PointId z = 0; z < n; ++z) orbits.push_back(orbit_set(sys, z));
      auto check = [&](const std::vector<PointId>& walk, std::size_t s) {
        if (p == Property::Eventual) {
          // Tail start N up to stem + n + loop length covers every distinct case.
          const std::size_t loop = walk.size() - s;
          for (std::size_t big_n = 0; big_n <= s + n + loop; ++big_n) {
            std::size_t pos = big_n < walk.size() ? big_n : s + (big_n - s) % loop;
            for (PointId z = 0; z < n; ++z)
              if (detail::tracks_lasso_from(sys, walk, s, pos, sys.iterate(z, big_n), eps)) return true;
          }
          return false;
        }
        PointSet v(n);
        for (PointId x : walk) v.set(x);
        for (PointId z = 0; z < n; ++z) {
          if (p == Property::Orbital ? hausdorff_distance(v, orbits[z], sys.space()) < eps
                                     : orbits[z].subset_of(sys.space().ball(v, eps)))
            return true;
        }
        return false;
      };
      r.counterexample = detail::enumerate_lassos(g, horizon + 1, budget, r.states, check);
      r.holds = !r.counterexample;
      break;
    }

    case Property::Limit:
    case Property::OrbitalLimit: {
      // Eventually exact walks: a delta-walk prefix, then the orbit of its last point.
      auto unmatched = [&](const detail::LayerSearch::Node& nd) {
        for (PointId z = 0; z < n; ++z) {
          PointId x = nd.x;
          for (std::size_t k = 0; k <= tail; ++k, x = sys.f(x)) {
            if (orb[z][nd.depth + k] == x) return false;
          }
        }
        return true;
      };
      auto w = detail::layer_search(sys, g, horizon, budget, ls, [&](PointId) { return PointSet(n); },
                                    [&](const PointSet& z, std::size_t, PointId) { return z; }, never, unmatched);
      set_cex(std::move(w), true);
      r.states = ls.nodes.size();
      break;
    }

    case Property::SLimit: {
      OracleResult a = oracle(sys, Property::Shadowing, tp, horizon, budget);
      if (!a.holds) return a;
      OracleResult b = oracle(sys, Property::SLimit2, tp, horizon, budget);
      b.states += a.states;
      b.required_horizon = std::max(*a.required_horizon, *b.required_horizon);
      b.certified = horizon >= *b.required_horizon;
      return b;
    }

    case Property::StrongOrbital: {
      const BoundedVerdict b = decide_strong_orbital_shadowing(sys, tp, std::min<std::size_t>(horizon + 1, 64), budget);
      r.holds = b.status != BoundedVerdict::Status::Refuted;
      r.counterexample = b.counterexample;
      r.states = b.lassos_checked;
      break;
    }
  }
  r.certified = r.required_horizon && horizon >= *r.required_horizon;
  return r;
}

}  // namespace shadowlab
