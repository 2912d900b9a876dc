#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "shadowlab/deciders/engine.hpp"
#include "shadowlab/deciders/lasso_refuter.hpp"
#include "shadowlab/deciders/visited_sets.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/induced.hpp"

namespace shadowlab {

/// closeness: d(phi(x_i), y_i) < closeness; up: tightness of walks in the
/// domain; down: tightness of walks in the codomain.
struct AlpThresholds {
  Rational closeness;
  Rational up;
  Rational down;

  static AlpThresholds make(Rational closeness, Rational up, Rational down) {
    if (closeness <= 0 || up <= 0 || down <= 0) throw DomainError("lifting thresholds must be positive");
    return {std::move(closeness), std::move(up), std::move(down)};
  }
};

enum class LiftProperty { ALP, EALP, OALP, SOALP, W1ALP, ALAP, ALAEP, OALAP };

inline constexpr std::array<std::pair<LiftProperty, std::string_view>, 8> kLiftNames{{
    {LiftProperty::ALP, "alp"},
    {LiftProperty::EALP, "ealp"},
    {LiftProperty::OALP, "oalp"},
    {LiftProperty::SOALP, "soalp"},
    {LiftProperty::W1ALP, "w1alp"},
    {LiftProperty::ALAP, "alap"},
    {LiftProperty::ALAEP, "alaep"},
    {LiftProperty::OALAP, "oalap"},
}};

inline std::string_view lift_name(LiftProperty p) {
  for (const auto& [q, n] : kLiftNames)
    if (q == p) return n;
  return "?";
}

inline LiftProperty parse_lift_property(std::string_view name) {
  for (const auto& [q, n] : kLiftNames)
    if (n == name) return q;
  throw InputError("unknown lifting property '" + std::string(name) + "'");
}

/// ALAP and oALAP carry no thresholds on finite systems.
inline bool threshold_free(LiftProperty p) { return p == LiftProperty::ALAP || p == LiftProperty::OALAP; }

inline void require_factor_map(const FactorMapSpec& spec) {
  const auto problems = validate_factor_map(spec);
  if (!problems.empty()) throw DomainError("not a factor map: " + problems.front());
}

/// Walk graphs on both sides plus near[y] = phi^-1(B(y, closeness)).
struct LiftContext {
  DeltaGraph down;
  DeltaGraph up;
  std::vector<PointSet> near;
  std::vector<PointSet> fiber;  // phi^-1(y)

  PointSet up_successors(const PointSet& s) const {
    PointSet out(up.size());
    s.for_each([&](PointId x) { out |= up.succ_set[x]; });
    return out;
  }
};

inline LiftContext lift_context(const FactorMapSpec& spec, const AlpThresholds& th) {
  require_factor_map(spec);
  LiftContext c;
  c.down = delta_graph(spec.codomain, th.down);
  c.up = delta_graph(spec.domain, th.up);
  const auto& ysp = spec.codomain.space();
  c.near.assign(spec.codomain.size(), PointSet(spec.domain.size()));
  c.fiber.assign(spec.codomain.size(), PointSet(spec.domain.size()));
  for (PointId y = 0; y < spec.codomain.size(); ++y) {
    const PointSet ball = ysp.ball(y, th.closeness);
    for (PointId x = 0; x < spec.domain.size(); ++x) {
      if (ball.test(spec.phi[x])) c.near[y].set(x);
      if (spec.phi[x] == y) c.fiber[y].set(x);
    }
  }
  return c;
}

/// Tracked set: the domain points that can end a lift of the walk so far.
inline TrackerSpec lift_tracker(const LiftContext& c) {
  TrackerSpec t;
  t.walk = &c.down;
  t.advance = [&c](const PointSet& s) { return c.up_successors(s); };
  t.allowed = c.near;
  return t;
}

/// Every codomain walk has a domain walk whose image stays close pointwise.
inline Verdict decide_alp_fixed(const FactorMapSpec& spec, const AlpThresholds& th,
                                std::size_t budget = kDefaultStateBudget) {
  const LiftContext c = lift_context(spec, th);
  const TrackerSpec t = lift_tracker(c);
  auto ex = explore_subsets(
      t, [](const SubsetState&, PointId, const PointSet& to) { return to.empty(); }, budget);
  if (ex.bad_from) {
    Counterexample cex{ex.walk_to(*ex.bad_from), {}, false, {}};
    cex.walk.push_back(*ex.bad_next);
    return Verdict::fail(std::move(cex), ex.states.size());
  }
  return Verdict::pass(StateSetWitness{std::move(ex.states)}, ex.index.size());
}

/// D-reachable chain: points ending a domain walk of length k.
inline std::vector<PointSet> up_reach_chain(const LiftContext& c) {
  std::vector<PointSet> chain{PointSet::full(c.up.size())};
  for (std::size_t k = 0; k < c.up.size(); ++k) chain.push_back(c.up_successors(chain.back()));
  return chain;
}

/// Lifts need only match from some index on.
inline Verdict decide_ealp_fixed(const FactorMapSpec& spec, const AlpThresholds& th,
                                 std::size_t budget = kDefaultStateBudget) {
  const LiftContext c = lift_context(spec, th);
  EventualSpec es{lift_tracker(c), up_reach_chain(c)};
  return decide_eventual_engine(es, budget);
}

namespace detail {

template <class Matches>
Verdict decide_visited_lift(const FactorMapSpec& spec, const AlpThresholds& th, std::size_t cap, Matches&& matches) {
  const LiftContext c = lift_context(spec, th);
  const auto downs = realizable_visited_sets(c.down, cap);
  const auto ups = realizable_visited_sets(c.up, cap);
  std::vector<PointSet> images;
  for (const auto& u : ups) {
    PointSet im(spec.codomain.size());
    u.for_each([&](PointId x) { im.set(spec.phi[x]); });
    images.push_back(std::move(im));
  }
  LiftCoverWitness wit;
  for (const auto& v : downs) {
    bool ok = false;
    for (std::size_t k = 0; k < ups.size() && !ok; ++k)
      if (matches(images[k], v)) {
        ok = true;
        wit.down.push_back(v);
        wit.up.push_back(ups[k]);
      }
    if (!ok) return Verdict::fail(covering_lasso(c.down, v), downs.size() + ups.size());
  }
  return Verdict::pass(std::move(wit), downs.size() + ups.size());
}

}  // namespace detail

/// Visited sets: d_H(phi(U), V) below the closeness threshold.
inline Verdict decide_oalp_fixed(const FactorMapSpec& spec, const AlpThresholds& th,
                                 std::size_t cap = kDefaultEnumerationCap) {
  const auto& ysp = spec.codomain.space();
  const auto cut = ysp.rank_cut(th.closeness);
  return detail::decide_visited_lift(spec, th, cap, [&](const PointSet& image, const PointSet& v) {
    return hausdorff_rank(image, v, ysp) < cut;
  });
}

/// Visited sets: V inside the closeness neighbourhood of phi(U).
inline Verdict decide_w1alp_fixed(const FactorMapSpec& spec, const AlpThresholds& th,
                                  std::size_t cap = kDefaultEnumerationCap) {
  const auto& ysp = spec.codomain.space();
  return detail::decide_visited_lift(spec, th, cap, [&](const PointSet& image, const PointSet& v) {
    return v.subset_of(ysp.ball(image, th.closeness));
  });
}

/// Bounded refuter for the every-tail Hausdorff condition; shares the lasso
/// machinery with strong orbital shadowing.
inline BoundedVerdict decide_soalp_bounded(const FactorMapSpec& spec, const AlpThresholds& th, std::size_t horizon,
                                           std::size_t lasso_budget = kDefaultLassoBudget) {
  if (horizon == 0) throw DomainError("horizon must be at least 1");
  const LiftContext c = lift_context(spec, th);
  LassoCheckSpec ls{&c.down, &c.up, c.near};
  BoundedVerdict v = refute_by_lassos(ls, horizon, lasso_budget);
  v.implied_by_shadowing = decide_alp_fixed(spec, th).holds;
  return v;
}

/// Eventually exact codomain walks need eventually exact lifts that stay
/// close throughout and end up with phi(x_i) = y_i.
inline Verdict decide_alaep_fixed(const FactorMapSpec& spec, const AlpThresholds& th,
                                  std::size_t budget = kDefaultStateBudget) {
  const LiftContext c = lift_context(spec, th);
  const TrackerSpec t = lift_tracker(c);
  auto ex = explore_subsets(
      t, [](const SubsetState&, PointId, const PointSet&) { return false; }, budget);
  auto good = merge_reachable(t, ex, spec.codomain.map(),
                              [&](const SubsetState& s) { return s.set.intersects(c.fiber[s.node]); });
  for (std::size_t s = 0; s < ex.states.size(); ++s)
    if (!good[s]) return Verdict::fail(Counterexample{ex.walk_to(s), {}, true, {}}, ex.states.size());
  return Verdict::pass(StateSetWitness{std::move(ex.states)}, ex.index.size());
}

inline constexpr char kLiftRule[] =
    "tail y_m, g(y_m), ...: lift by the exact orbit of any x in phi^-1(y_m); phi(f^k x) = g^k(y_m)";

/// On finite systems asymptotic pseudo-orbits are eventually exact, and any
/// point of the fiber over the tail start lifts the tail exactly.
inline Verdict decide_alap(const FactorMapSpec& spec) {
  require_factor_map(spec);
  return Verdict::pass(RuleWitness{kLiftRule}, spec.domain.size());
}

/// Equal tails have equal omega-limit sets, so the same rule serves.
inline Verdict decide_oalap(const FactorMapSpec& spec) {
  require_factor_map(spec);
  return Verdict::pass(RuleWitness{kLiftRule}, spec.domain.size());
}

struct LiftOptions {
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

inline Verdict decide_lift(const FactorMapSpec& spec, LiftProperty p, const AlpThresholds& th,
                           const LiftOptions& opt = {}) {
  switch (p) {
    case LiftProperty::ALP: return decide_alp_fixed(spec, th, opt.state_budget);
    case LiftProperty::EALP: return decide_ealp_fixed(spec, th, opt.state_budget);
    case LiftProperty::OALP: return decide_oalp_fixed(spec, th, opt.enumeration_cap);
    case LiftProperty::W1ALP: return decide_w1alp_fixed(spec, th, opt.enumeration_cap);
    case LiftProperty::ALAP: return decide_alap(spec);
    case LiftProperty::ALAEP: return decide_alaep_fixed(spec, th, opt.state_budget);
    case LiftProperty::OALAP: return decide_oalap(spec);
    case LiftProperty::SOALP: break;
  }
  throw DomainError("soalp has no exact decider; use the bounded refuter");
}

}  // namespace shadowlab
