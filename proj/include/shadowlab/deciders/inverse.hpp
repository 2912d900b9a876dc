#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "shadowlab/deciders/delta_graph.hpp"
#include "shadowlab/deciders/limit.hpp"
#include "shadowlab/deciders/verdict.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/space.hpp"

namespace shadowlab {

namespace detail {

inline void require_surjective(const FiniteMetricSystem& sys) {
  if (!sys.is_surjective()) throw DomainError("inverse shadowing is only defined for surjective maps");
}

/// Game positions (w, t mod p) for tracking the orbit of x; far[t] holds
/// the positions w with d(w, f^t(x)) >= eps.
struct TrackingGame {
  std::size_t period = 1;
  std::vector<PointSet> far;
};

inline TrackingGame tracking_game(const FiniteMetricSystem& sys, PointId x, const Rational& eps) {
  TrackingGame g;
  g.period = orbit_shape(sys, x).period;
  PointId target = x;
  for (std::size_t t = 0; t < g.period; ++t, target = sys.f(target)) {
    PointSet near = sys.space().ball(target, eps);
    g.far.push_back(PointSet::full(sys.size()) - near);
  }
  return g;
}

}  // namespace detail

/// For every x some start y has all delta-walks from y tracking the orbit of
/// x within eps. Safe positions are the greatest fixed point of "close now and
/// every successor safe at the next phase".
inline Verdict decide_inverse_shadowing(const FiniteMetricSystem& sys, const ThresholdPair& tp) {
  detail::require_surjective(sys);
  const std::size_t n = sys.size();
  const DeltaGraph g = delta_graph(sys, tp.delta);
  InverseWitness wit;
  std::size_t explored = 0;
  for (PointId x = 0; x < n; ++x) {
    const auto game = detail::tracking_game(sys, x, tp.eps);
    const std::size_t p = game.period;
    explored += n * p;
    std::vector<PointSet> safe;
    for (std::size_t t = 0; t < p; ++t) safe.push_back(PointSet::full(n) - game.far[t]);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t t = 0; t < p; ++t) {
        const PointSet& next = safe[(t + 1) % p];
        for (PointId w : safe[t].members())
          if (!g.succ_set[w].subset_of(next)) {
            safe[t].reset(w);
            changed = true;
          }
      }
    }
    if (safe[0].empty()) {
      // Show how the walk started at x itself escapes: BFS to a far position.
      std::vector<std::size_t> par(n * p, static_cast<std::size_t>(-1));
      std::vector<bool> seen(n * p, false);
      std::vector<std::size_t> q{x * p};
      seen[x * p] = true;
      std::size_t hit = x * p;
      for (std::size_t i = 0; i < q.size(); ++i) {
        const std::size_t s = q[i];
        if (game.far[s % p].test(static_cast<PointId>(s / p))) {
          hit = s;
          break;
        }
        for (PointId w : g.succ[s / p]) {
          const std::size_t to = w * p + (s % p + 1) % p;
          if (!seen[to]) {
            seen[to] = true;
            par[to] = s;
            q.push_back(to);
          }
        }
      }
      Counterexample cex;
      for (std::size_t s = hit; s != static_cast<std::size_t>(-1); s = par[s])
        cex.walk.push_back(static_cast<PointId>(s / p));
      std::reverse(cex.walk.begin(), cex.walk.end());
      cex.target = x;
      return Verdict::fail(std::move(cex), explored, "no start tracks the orbit of the target");
    }
    wit.start.push_back(static_cast<PointId>(safe[0].first()));
    wit.safe.push_back(std::move(safe));
  }
  return Verdict::pass(std::move(wit), explored);
}

/// The reverse quantifier order, checked directly: for every positional
/// adversary (one delta-successor per position (w, t mod p)) some start y
/// yields a tracking walk. Strategies are assigned lazily along the walks
/// they drive. Meant for small systems.
inline bool inverse_by_strategies(const FiniteMetricSystem& sys, const ThresholdPair& tp) {
  detail::require_surjective(sys);
  const std::size_t n = sys.size();
  const DeltaGraph g = delta_graph(sys, tp.delta);
  for (PointId x = 0; x < n; ++x) {
    const auto game = detail::tracking_game(sys, x, tp.eps);
    const std::size_t p = game.period;
    const std::size_t positions = n * p;
    constexpr std::size_t kFree = static_cast<std::size_t>(-1);
    std::vector<std::size_t> choice(positions, kFree);
    std::vector<std::vector<bool>> on_path(n, std::vector<bool>(positions, false));
    // Whether the current partial strategy extends to one under which the walks
    // from starts y, y+1, ... all leave the eps-tube; `s` is the position of y.
    std::function<bool(PointId, std::size_t)> all_escape = [&](PointId y, std::size_t s) -> bool {
      if (game.far[s % p].test(static_cast<PointId>(s / p)))
        return y + 1 == n ? true : all_escape(y + 1, std::size_t{y + 1} * p);
      if (on_path[y][s]) return false;  // the walk from y cycles inside the tube
      on_path[y][s] = true;
      bool ok = false;
      const std::size_t phase = (s % p + 1) % p;
      if (choice[s] != kFree) {
        ok = all_escape(y, choice[s] * p + phase);
      } else {
        for (PointId w : g.succ[s / p]) {
          choice[s] = w;
          if ((ok = all_escape(y, w * p + phase))) break;
        }
        if (!ok) choice[s] = kFree;
      }
      on_path[y][s] = false;
      return ok;
    };
    if (all_escape(0, 0)) return false;
  }
  return true;
}

}  // namespace shadowlab
