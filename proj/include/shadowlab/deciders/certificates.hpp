#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "shadowlab/deciders/oracle.hpp"
#include "shadowlab/deciders/property.hpp"

namespace shadowlab {

/// Result of re-validating a verdict by direct simulation.
struct CertificateCheck {
  bool ok = true;
  std::string reason;

  static CertificateCheck fail(std::string why) { return {false, std::move(why)}; }
};

namespace cert {

inline bool shadows_prefix(const FiniteMetricSystem& sys, PointId z, const std::vector<PointId>& walk,
                           const Rational& eps) {
  for (PointId x : walk) {
    if (!(sys.d(z, x) < eps)) return false;
    z = sys.f(z);
  }
  return true;
}

inline bool is_lasso(const FiniteMetricSystem& sys, const Counterexample& c, const Rational& delta) {
  return c.loop_start && *c.loop_start < c.walk.size() && is_pseudo_orbit(sys, c.walk, delta) &&
         sys.d(sys.f(c.walk.back()), c.walk[*c.loop_start]) < delta;
}

/// Candidate sets of the direct tracking law, recomputed without the decider.
inline PointSet image_of(const FiniteMetricSystem& sys, const PointSet& s) {
  PointSet out(sys.size());
  s.for_each([&](PointId z) { out.set(sys.f(z)); });
  return out;
}

inline PointSet near_point(const FiniteMetricSystem& sys, PointId x, const Rational& eps) {
  PointSet out(sys.size());
  for (PointId z = 0; z < sys.size(); ++z)
    if (sys.d(z, x) < eps) out.set(z);
  return out;
}

/// {z : x lies eps-close to some point of Orb z}.
inline PointSet orbit_near(const FiniteMetricSystem& sys, PointId x, const Rational& eps) {
  PointSet out(sys.size());
  for (PointId z = 0; z < sys.size(); ++z)
    orbit_set(sys, z).for_each([&](PointId u) {
      if (sys.d(u, x) < eps) out.set(z);
    });
  return out;
}

inline CertificateCheck check_counterexample(const FiniteMetricSystem& sys, Property p, const ThresholdPair& tp,
                                             const Counterexample& c) {
  const std::size_t n = sys.size();
  const Rational& eps = tp.eps;
  if (p == Property::Inverse) {
    if (!c.target) return CertificateCheck::fail("inverse counterexample names no target");
    const PointId x = *c.target;
    if (!is_pseudo_orbit(sys, c.walk, tp.delta) || c.walk.empty() || c.walk.front() != x)
      return CertificateCheck::fail("escape walk is not a delta-walk from the target");
    if (sys.d(c.walk.back(), sys.iterate(x, c.walk.size() - 1)) < eps)
      return CertificateCheck::fail("escape walk ends inside the tube");
    // Every start must have some escaping walk: grow reachable sets.
    const DeltaGraph g = delta_graph(sys, tp.delta);
    const std::size_t steps = n * n + 1;
    for (PointId y = 0; y < n; ++y) {
      PointSet reach = PointSet::singleton(n, y);
      bool escaped = false;
      for (std::size_t t = 0; t <= steps && !escaped; ++t) {
        const PointId target = sys.iterate(x, t);
        reach.for_each([&](PointId w) { escaped = escaped || !(sys.d(w, target) < eps); });
        PointSet next(n);
        reach.for_each([&](PointId w) { next |= g.succ_set[w]; });
        reach = std::move(next);
      }
      if (!escaped) return CertificateCheck::fail("start " + sys.label(y) + " tracks the target");
    }
    return {};
  }
  if (c.loop_start) {
    if (!is_lasso(sys, c, tp.delta)) return CertificateCheck::fail("lasso is not a delta-pseudo-orbit");
  } else if (!is_pseudo_orbit(sys, c.walk, tp.delta) || c.walk.empty()) {
    return CertificateCheck::fail("walk is not a delta-pseudo-orbit");
  }
  const auto& w = c.walk;
  switch (p) {
    case Property::Shadowing:
    case Property::SLimit:
      if (!c.exact_tail) {
        for (PointId z = 0; z < n; ++z)
          if (shadows_prefix(sys, z, w, eps)) return CertificateCheck::fail("point " + sys.label(z) + " shadows");
        return {};
      }
      [[fallthrough]];
    case Property::SLimit2: {
      // Prefix, then the exact orbit of its last point; no z may stay close and meet it.
      std::vector<PointId> ext = w;
      for (std::size_t k = 0; k < n * n + n; ++k) ext.push_back(sys.f(ext.back()));
      for (PointId z = 0; z < n; ++z) {
        if (!shadows_prefix(sys, z, ext, eps)) continue;
        if (sys.iterate(z, ext.size() - 1) == ext.back())
          return CertificateCheck::fail("point " + sys.label(z) + " shadows and merges");
      }
      return {};
    }
    case Property::HShadowing: {
      const std::size_t m = w.size() - 1;
      for (PointId y = 0; y < n; ++y) {
        std::vector<PointId> head(w.begin(), w.end() - 1);
        if (shadows_prefix(sys, y, head, eps) && sys.iterate(y, m) == w.back())
          return CertificateCheck::fail("point " + sys.label(y) + " h-shadows");
      }
      return {};
    }
    case Property::Weak1: {
      for (PointId z = 0; z < n; ++z) {
        bool all = true;
        for (PointId x : w) all = all && orbit_near(sys, x, eps).test(z);
        if (all) return CertificateCheck::fail("orbit of " + sys.label(z) + " covers the walk");
      }
      return {};
    }
    case Property::Eventual: {
      if (!c.loop_start) return CertificateCheck::fail("eventual counterexample must be a lasso");
      const std::size_t s = *c.loop_start, loop = w.size() - s;
      for (std::size_t big_n = 0; big_n <= s + n + loop; ++big_n) {
        const std::size_t pos = big_n < w.size() ? big_n : s + (big_n - s) % loop;
        for (PointId z = 0; z < n; ++z)
          if (detail::tracks_lasso_from(sys, w, s, pos, sys.iterate(z, big_n), eps))
            return CertificateCheck::fail("a tail of the lasso is shadowed");
      }
      return {};
    }
    case Property::Orbital:
    case Property::Weak2: {
      if (!c.loop_start) return CertificateCheck::fail("visited-set counterexample must be a lasso");
      PointSet v(n);
      for (PointId x : w) v.set(x);
      for (PointId z = 0; z < n; ++z) {
        const PointSet orb = orbit_set(sys, z);
        const bool good = p == Property::Orbital ? hausdorff_distance(v, orb, sys.space()) < eps
                                                 : orb.subset_of(sys.space().ball(v, eps));
        if (good) return CertificateCheck::fail("orbit of " + sys.label(z) + " matches the visited set");
      }
      return {};
    }
    case Property::StrongOrbital: return {};
    case Property::Limit:
    case Property::OrbitalLimit:
    case Property::Inverse: break;
  }
  return CertificateCheck::fail("property " + std::string(property_name(p)) + " never fails");
}

inline CertificateCheck check_state_set(const FiniteMetricSystem& sys, Property p, const ThresholdPair& tp,
                                        const StateSetWitness& wit) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  const bool weak = p == Property::Weak1;
  auto start = [&](PointId x) { return weak ? orbit_near(sys, x, tp.eps) : near_point(sys, x, tp.eps); };
  auto step = [&](const PointSet& s, PointId x) {
    return weak ? s & orbit_near(sys, x, tp.eps) : image_of(sys, s) & near_point(sys, x, tp.eps);
  };
  std::unordered_set<SubsetState, SubsetStateHash> have(wit.states.begin(), wit.states.end());
  for (PointId x = 0; x < sys.size(); ++x)
    if (!have.count(SubsetState{x, start(x)})) return CertificateCheck::fail("missing initial state");
  for (const auto& st : wit.states) {
    if (st.set.empty()) return CertificateCheck::fail("invariant contains an empty candidate set");
    for (PointId nx : g.succ[st.node]) {
      if (p == Property::HShadowing && !image_of(sys, st.set).test(nx))
        return CertificateCheck::fail("a step cannot be hit exactly");
      if (!have.count(SubsetState{nx, step(st.set, nx)})) return CertificateCheck::fail("invariant not closed");
    }
    if (p == Property::SLimit || p == Property::SLimit2) {
      // The exact continuation must meet its candidate set before it empties.
      SubsetState cur = st;
      bool merged = false;
      for (std::size_t k = 0; k <= wit.states.size() && !merged && !cur.set.empty(); ++k) {
        if (cur.set.test(cur.node)) {
          merged = true;
          break;
        }
        const PointId nx = sys.f(cur.node);
        cur = SubsetState{nx, step(cur.set, nx)};
      }
      if (!merged) return CertificateCheck::fail("an exact continuation never merges");
    }
  }
  return {};
}

/// Closure of a reset-on-death configuration set under `step`, and no death
/// edge on a cycle. chain[k] is the reset set at age k.
template <class Step>
CertificateCheck check_eventual_law(const DeltaGraph& g, Step&& step, const std::vector<PointSet>& chain,
                                    const EventualWitness& wit) {
  const std::size_t last = chain.size() - 1;
  std::unordered_map<EventualConfig, std::size_t, EventualConfigHash> index;
  for (std::size_t i = 0; i < wit.configs.size(); ++i) index.emplace(wit.configs[i], i);
  std::vector<std::vector<std::size_t>> adj(wit.configs.size());
  std::vector<std::pair<std::size_t, std::size_t>> deaths;
  for (std::size_t i = 0; i < wit.configs.size(); ++i) {
    const auto& c = wit.configs[i];
    const std::size_t age = std::min(c.age + 1, last);
    for (PointId nx : g.succ[c.node]) {
      PointSet t = step(c.tracked, nx);
      const bool death = t.empty();
      if (death) t = step.reset(chain[age], nx);
      auto it = index.find(EventualConfig{nx, t, age});
      if (it == index.end()) return CertificateCheck::fail("configuration set not closed");
      adj[i].push_back(it->second);
      if (death) deaths.emplace_back(i, it->second);
    }
  }
  // A death edge u -> v on a cycle would allow infinitely many deaths.
  for (auto [u, v] : deaths) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::size_t> q{v};
    seen[v] = true;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (auto w : adj[q[i]])
        if (!seen[w]) {
          seen[w] = true;
          q.push_back(w);
        }
    if (seen[u]) return CertificateCheck::fail("a death edge lies on a cycle");
  }
  return {};
}

inline CertificateCheck check_eventual(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                                       const EventualWitness& wit) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  std::vector<PointSet> chain{PointSet::full(sys.size())};
  for (std::size_t k = 0; k < sys.size(); ++k) chain.push_back(image_of(sys, chain.back()));
  struct {
    const FiniteMetricSystem& sys;
    const Rational& eps;
    PointSet operator()(const PointSet& s, PointId x) const { return image_of(sys, s) & near_point(sys, x, eps); }
    PointSet reset(const PointSet& r, PointId x) const { return r & near_point(sys, x, eps); }
  } law{sys, tp.eps};
  return check_eventual_law(g, law, chain, wit);
}

inline CertificateCheck check_cover(const FiniteMetricSystem& sys, Property p, const ThresholdPair& tp,
                                    const CoverWitness& wit) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  const auto sets = realizable_visited_sets(g, std::max<std::size_t>(sys.size(), kDefaultEnumerationCap));
  for (const auto& v : sets) {
    auto it = std::find(wit.visited.begin(), wit.visited.end(), v);
    if (it == wit.visited.end()) return CertificateCheck::fail("a realizable visited set is not handled");
    const PointSet orb = orbit_set(sys, wit.point[it - wit.visited.begin()]);
    const bool good = p == Property::Orbital ? hausdorff_distance(v, orb, sys.space()) < tp.eps
                                             : orb.subset_of(sys.space().ball(v, tp.eps));
    if (!good) return CertificateCheck::fail("witness orbit does not match its visited set");
  }
  return {};
}

inline CertificateCheck check_inverse(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                                      const InverseWitness& wit) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  if (wit.start.size() != sys.size()) return CertificateCheck::fail("one start per target expected");
  for (PointId x = 0; x < sys.size(); ++x) {
    const auto& safe = wit.safe[x];
    const std::size_t p = safe.size();
    if (p == 0 || sys.iterate(x, p) != x) return CertificateCheck::fail("phase count is not a period");
    if (!safe[0].test(wit.start[x])) return CertificateCheck::fail("start is not safe");
    for (std::size_t t = 0; t < p; ++t) {
      const PointId target = sys.iterate(x, t);
      bool ok = true;
      safe[t].for_each([&](PointId w) {
        ok = ok && sys.d(w, target) < tp.eps && g.succ_set[w].subset_of(safe[(t + 1) % p]);
      });
      if (!ok) return CertificateCheck::fail("safe region is not invariant");
    }
  }
  return {};
}

/// Checks the limit rule on every eventually exact walk shape: tail start x at
/// index m, for all x and all m below 2n + 2.
inline CertificateCheck check_limit_rule(const FiniteMetricSystem& sys) {
  const std::size_t n = sys.size();
  for (PointId x = 0; x < n; ++x)
    for (std::size_t m = 0; m < 2 * n + 2; ++m) {
      const PointId z = limit_shadow_point(sys, x, m);
      // From index m + n both are periodic; compare one full lap.
      for (std::size_t i = m + n; i <= m + 2 * n; ++i)
        if (sys.iterate(z, i) != sys.iterate(x, i - m)) return CertificateCheck::fail("limit rule misses a tail");
      if (omega_limit_set(sys, z) != omega_limit_set(sys, x)) return CertificateCheck::fail("omega sets differ");
    }
  return {};
}

}  // namespace cert

/// Re-validates a verdict from `decide` by direct simulation.
inline CertificateCheck verify_certificate(const FiniteMetricSystem& sys, Property p, const ThresholdPair& tp,
                                           const Verdict& v) {
  if (v.holds == v.counterexample.has_value() || v.holds != v.witness.has_value())
    return CertificateCheck::fail("verdict must carry exactly one of witness and counterexample");
  if (!v.holds) return cert::check_counterexample(sys, p, tp, *v.counterexample);
  const Witness& w = *v.witness;
  if (const auto* s = std::get_if<StateSetWitness>(&w)) return cert::check_state_set(sys, p, tp, *s);
  if (const auto* e = std::get_if<EventualWitness>(&w)) return cert::check_eventual(sys, tp, *e);
  if (const auto* c = std::get_if<CoverWitness>(&w)) return cert::check_cover(sys, p, tp, *c);
  if (const auto* i = std::get_if<InverseWitness>(&w)) return cert::check_inverse(sys, tp, *i);
  if (std::holds_alternative<RuleWitness>(w)) return cert::check_limit_rule(sys);
  return CertificateCheck::fail("unexpected witness kind");
}

/// Bounded refuter output: the reported lasso must be a delta-walk.
inline CertificateCheck verify_certificate(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                                           const BoundedVerdict& b) {
  if (b.status == BoundedVerdict::Status::Refuted) {
    if (!b.counterexample || !cert::is_lasso(sys, *b.counterexample, tp.delta))
      return CertificateCheck::fail("refuting lasso is not a delta-pseudo-orbit");
  } else if (b.counterexample) {
    return CertificateCheck::fail("unknown outcome carries a counterexample");
  }
  return {};
}

}  // namespace shadowlab
