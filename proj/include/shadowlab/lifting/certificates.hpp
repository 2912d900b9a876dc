#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "shadowlab/deciders/certificates.hpp"
#include "shadowlab/lifting/alp.hpp"

namespace shadowlab {

namespace liftcert {

/// Transition law of lifts, rebuilt from raw distances.
struct LiftLaw {
  const FactorMapSpec& spec;
  const AlpThresholds& th;

  PointSet near(PointId y) const {
    PointSet out(spec.domain.size());
    for (PointId x = 0; x < spec.domain.size(); ++x)
      if (spec.codomain.d(spec.phi[x], y) < th.closeness) out.set(x);
    return out;
  }
  PointSet spread(const PointSet& s) const {
    PointSet out(spec.domain.size());
    s.for_each([&](PointId x) {
      for (PointId u = 0; u < spec.domain.size(); ++u)
        if (spec.domain.d(spec.domain.f(x), u) < th.up) out.set(u);
    });
    return out;
  }
  PointSet operator()(const PointSet& s, PointId y) const { return spread(s) & near(y); }
  PointSet reset(const PointSet& r, PointId y) const { return r & near(y); }
};

inline bool down_walk(const FactorMapSpec& spec, const Counterexample& c, const Rational& w) {
  if (c.walk.empty()) return false;
  return c.loop_start ? cert::is_lasso(spec.codomain, c, w) : is_pseudo_orbit(spec.codomain, c.walk, w);
}

/// Some infinite walk stays inside `u` and visits all of it: search over
/// (position, visited-so-far) pairs.
inline bool realizable_brute(const FiniteMetricSystem& sys, const PointSet& u, const Rational& tight) {
  const std::size_t n = sys.size();
  const auto members = u.members();
  if (members.empty() || members.size() > 20) return false;
  std::vector<std::size_t> local(n, members.size());
  for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = k;
  auto step_ok = [&](PointId a, PointId b) { return sys.d(sys.f(a), b) < tight; };
  // Points of u on a cycle inside u.
  auto on_cycle = [&](PointId x) {
    std::vector<bool> seen(n, false);
    std::vector<PointId> q{x};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (PointId b : members)
        if (step_ok(q[i], b)) {
          if (b == x) return true;
          if (!seen[b]) {
            seen[b] = true;
            q.push_back(b);
          }
        }
    return false;
  };
  const std::uint64_t full = (std::uint64_t{1} << members.size()) - 1;
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<PointId, std::uint64_t>> q;
  for (PointId x : members) {
    const std::uint64_t m = std::uint64_t{1} << local[x];
    q.emplace_back(x, m);
    seen.insert(m * 64 + x);
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto [x, m] = q[i];
    if (m == full && on_cycle(x)) return true;
    for (PointId b : members) {
      if (!step_ok(x, b)) continue;
      const std::uint64_t nm = m | (std::uint64_t{1} << local[b]);
      if (seen.insert(nm * 64 + b).second) q.emplace_back(b, nm);
    }
  }
  return false;
}

inline std::vector<PointSet> realizable_sets_brute(const FiniteMetricSystem& sys, const Rational& tight) {
  std::vector<PointSet> out;
  const std::uint64_t count = std::uint64_t{1} << sys.size();
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    PointSet u = PointSet::from_mask(sys.size(), mask);
    if (realizable_brute(sys, u, tight)) out.push_back(std::move(u));
  }
  return out;
}

inline PointSet image(const FactorMapSpec& spec, const PointSet& u) {
  PointSet out(spec.codomain.size());
  u.for_each([&](PointId x) { out.set(spec.phi[x]); });
  return out;
}

inline bool set_matches(const FactorMapSpec& spec, LiftProperty p, const AlpThresholds& th, const PointSet& up,
                        const PointSet& down) {
  const PointSet im = image(spec, up);
  const auto& ysp = spec.codomain.space();
  return p == LiftProperty::OALP ? hausdorff_distance(im, down, ysp) < th.closeness
                                 : down.subset_of(ysp.ball(im, th.closeness));
}

inline CertificateCheck check_counterexample(const FactorMapSpec& spec, LiftProperty p, const AlpThresholds& th,
                                             const Counterexample& c) {
  if (!down_walk(spec, c, th.down)) return CertificateCheck::fail("counterexample is not a codomain walk");
  const LiftLaw law{spec, th};
  const auto& w = c.walk;
  switch (p) {
    case LiftProperty::ALP: {
      PointSet t = law.near(w.front());
      for (std::size_t i = 1; i < w.size(); ++i) t = law(t, w[i]);
      if (!t.empty()) return CertificateCheck::fail("the walk still lifts");
      return {};
    }
    case LiftProperty::ALAEP: {
      if (!c.exact_tail) return CertificateCheck::fail("counterexample needs an exact tail");
      // Follow the exact tail until (node, lift set) repeats; no lift set may
      // ever meet the fiber over the current node.
      PointSet t = law.near(w.front());
      for (std::size_t i = 1; i < w.size(); ++i) t = law(t, w[i]);
      std::unordered_set<SubsetState, SubsetStateHash> seen;
      PointId y = w.back();
      while (seen.insert(SubsetState{y, t}).second) {
        bool merged = false;
        t.for_each([&](PointId x) { merged = merged || spec.phi[x] == y; });
        if (merged) return CertificateCheck::fail("a lift merges with the tail");
        y = spec.codomain.f(y);
        t = law(t, y);
      }
      return {};
    }
    case LiftProperty::EALP: {
      if (!c.loop_start) return CertificateCheck::fail("eventual counterexample must be a lasso");
      // Product of lasso positions and domain points, restricted to close
      // pairs; nodes with an infinite future are found by pruning.
      const std::size_t s = *c.loop_start, len = w.size(), nx = spec.domain.size();
      auto next_pos = [&](std::size_t i) { return i + 1 < len ? i + 1 : s; };
      std::vector<std::vector<bool>> alive(len, std::vector<bool>(nx));
      for (std::size_t i = 0; i < len; ++i) {
        const PointSet nr = law.near(w[i]);
        for (PointId x = 0; x < nx; ++x) alive[i][x] = nr.test(x);
      }
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < len; ++i)
          for (PointId x = 0; x < nx; ++x) {
            if (!alive[i][x]) continue;
            const PointSet nxt = law.spread(PointSet::singleton(nx, x));
            bool any = false;
            nxt.for_each([&](PointId u) { any = any || alive[next_pos(i)][u]; });
            if (!any) {
              alive[i][x] = false;
              changed = true;
            }
          }
      }
      // A lift may start at any index N from any point reachable in N steps.
      PointSet reach = PointSet::full(nx);
      std::size_t pos = 0;
      for (std::size_t big_n = 0; big_n <= len + nx + 1; ++big_n) {
        bool hit = false;
        reach.for_each([&](PointId x) { hit = hit || alive[pos][x]; });
        if (hit) return CertificateCheck::fail("a tail of the lasso lifts");
        reach = law.spread(reach);
        pos = next_pos(pos);
      }
      return {};
    }
    case LiftProperty::OALP:
    case LiftProperty::W1ALP: {
      if (!c.loop_start) return CertificateCheck::fail("visited-set counterexample must be a lasso");
      PointSet v(spec.codomain.size());
      for (PointId y : w) v.set(y);
      for (const auto& u : realizable_sets_brute(spec.domain, th.up))
        if (set_matches(spec, p, th, u, v)) return CertificateCheck::fail("some domain walk matches");
      return {};
    }
    case LiftProperty::SOALP: return {};
    case LiftProperty::ALAP:
    case LiftProperty::OALAP: break;
  }
  return CertificateCheck::fail("property " + std::string(lift_name(p)) + " never fails");
}

inline CertificateCheck check_state_set(const FactorMapSpec& spec, LiftProperty p, const AlpThresholds& th,
                                        const StateSetWitness& wit) {
  const LiftLaw law{spec, th};
  const DeltaGraph g = delta_graph(spec.codomain, th.down);
  std::unordered_map<SubsetState, std::size_t, SubsetStateHash> have;
  for (std::size_t i = 0; i < wit.states.size(); ++i) have.emplace(wit.states[i], i);
  for (PointId y = 0; y < spec.codomain.size(); ++y)
    if (!have.count(SubsetState{y, law.near(y)})) return CertificateCheck::fail("missing initial state");
  for (const auto& st : wit.states) {
    if (st.set.empty()) return CertificateCheck::fail("invariant contains an empty lift set");
    for (PointId ny : g.succ[st.node])
      if (!have.count(SubsetState{ny, law(st.set, ny)})) return CertificateCheck::fail("invariant not closed");
  }
  if (p != LiftProperty::ALAEP) return {};
  // Each state must reach a merge along the exact codomain orbit.
  for (const auto& st : wit.states) {
    SubsetState cur = st;
    bool merged = false;
    for (std::size_t k = 0; k <= wit.states.size() && !merged; ++k) {
      cur.set.for_each([&](PointId x) { merged = merged || spec.phi[x] == cur.node; });
      const PointId ny = spec.codomain.f(cur.node);
      cur = SubsetState{ny, law(cur.set, ny)};
    }
    if (!merged) return CertificateCheck::fail("a state never merges along the exact tail");
  }
  return {};
}

inline CertificateCheck check_cover(const FactorMapSpec& spec, LiftProperty p, const AlpThresholds& th,
                                    const LiftCoverWitness& wit) {
  if (wit.down.size() != wit.up.size()) return CertificateCheck::fail("cover witness is ragged");
  for (std::size_t k = 0; k < wit.down.size(); ++k) {
    if (!realizable_brute(spec.domain, wit.up[k], th.up))
      return CertificateCheck::fail("a domain visited set is not realizable");
    if (!set_matches(spec, p, th, wit.up[k], wit.down[k])) return CertificateCheck::fail("a cover entry mismatches");
  }
  for (const auto& v : realizable_sets_brute(spec.codomain, th.down))
    if (std::find(wit.down.begin(), wit.down.end(), v) == wit.down.end())
      return CertificateCheck::fail("a codomain visited set is not covered");
  return {};
}

/// The exact-fiber rule needs a surjective semiconjugacy.
inline CertificateCheck check_rule(const FactorMapSpec& spec) {
  std::vector<bool> hit(spec.codomain.size(), false);
  for (PointId x = 0; x < spec.domain.size(); ++x) {
    if (spec.phi[spec.domain.f(x)] != spec.codomain.f(spec.phi[x]))
      return CertificateCheck::fail("phi does not intertwine the maps at " + spec.domain.label(x));
    hit[spec.phi[x]] = true;
  }
  for (PointId y = 0; y < spec.codomain.size(); ++y)
    if (!hit[y]) return CertificateCheck::fail("fiber over " + spec.codomain.label(y) + " is empty");
  return {};
}

}  // namespace liftcert

inline CertificateCheck verify_lift_certificate(const FactorMapSpec& spec, LiftProperty p, const AlpThresholds& th,
                                                const Verdict& v) {
  if (v.holds == v.counterexample.has_value() || v.holds != v.witness.has_value())
    return CertificateCheck::fail("verdict must carry exactly one of witness and counterexample");
  if (!v.holds) return liftcert::check_counterexample(spec, p, th, *v.counterexample);
  const Witness& w = *v.witness;
  if (const auto* s = std::get_if<StateSetWitness>(&w)) return liftcert::check_state_set(spec, p, th, *s);
  if (const auto* e = std::get_if<EventualWitness>(&w)) {
    const liftcert::LiftLaw law{spec, th};
    std::vector<PointSet> chain{PointSet::full(spec.domain.size())};
    for (std::size_t k = 0; k < spec.domain.size(); ++k) chain.push_back(law.spread(chain.back()));
    return cert::check_eventual_law(delta_graph(spec.codomain, th.down), law, chain, *e);
  }
  if (const auto* c = std::get_if<LiftCoverWitness>(&w)) return liftcert::check_cover(spec, p, th, *c);
  if (std::holds_alternative<RuleWitness>(w)) return liftcert::check_rule(spec);
  return CertificateCheck::fail("unexpected witness kind");
}

}  // namespace shadowlab
