#pragma once

#include <vector>

#include "shadowlab/deciders/delta_graph.hpp"
#include "shadowlab/deciders/engine.hpp"
#include "shadowlab/deciders/verdict.hpp"
#include "shadowlab/space.hpp"

namespace shadowlab {

/// Shadow-set law on the delta-graph: S -> f(S) & B_eps(next).
inline TrackerSpec shadow_tracker(const FiniteMetricSystem& sys, const DeltaGraph& g, const Rational& eps) {
  TrackerSpec t;
  t.walk = &g;
  t.advance = [&sys](const PointSet& s) { return sys.image(s); };
  t.allowed = sys.space().balls(eps);
  return t;
}

inline Verdict decide_shadowing(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                                std::size_t budget = kDefaultStateBudget) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  const TrackerSpec spec = shadow_tracker(sys, g, tp.eps);
  auto ex = explore_subsets(
      spec, [](const SubsetState&, PointId, const PointSet& to) { return to.empty(); }, budget);
  if (ex.bad_from) {
    Counterexample c{ex.walk_to(*ex.bad_from), {}, false, {}};
    c.walk.push_back(*ex.bad_next);
    return Verdict::fail(std::move(c), ex.states.size());
  }
  return Verdict::pass(StateSetWitness{std::move(ex.states)}, ex.index.size());
}

/// Finite walks must be shadowed with an exact hit at the last point, i.e.
/// every delta-successor of a reachable state lies in f(S).
inline Verdict decide_h_shadowing(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                                  std::size_t budget = kDefaultStateBudget) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  const TrackerSpec spec = shadow_tracker(sys, g, tp.eps);
  auto ex = explore_subsets(
      spec,
      [&](const SubsetState& from, PointId next, const PointSet&) { return !sys.image(from.set).test(next); },
      budget);
  if (ex.bad_from) {
    Counterexample c{ex.walk_to(*ex.bad_from), {}, false, {}};
    c.walk.push_back(*ex.bad_next);
    return Verdict::fail(std::move(c), ex.states.size());
  }
  return Verdict::pass(StateSetWitness{std::move(ex.states)}, ex.index.size());
}

/// cover[j] = {z : j in B_eps(Orb z)}.
inline std::vector<PointSet> orbit_cover(const FiniteMetricSystem& sys, const Rational& eps) {
  const std::size_t n = sys.size();
  std::vector<PointSet> cover(n, PointSet(n));
  for (PointId z = 0; z < n; ++z) {
    PointSet near = sys.space().ball(orbit_set(sys, z), eps);
    near.for_each([&](PointId j) { cover[j].set(z); });
  }
  return cover;
}

/// Tracks the candidates z whose orbit neighbourhood contains every visited point.
inline Verdict decide_weak1(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                            std::size_t budget = kDefaultStateBudget) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  TrackerSpec spec;
  spec.walk = &g;
  spec.advance = [](const PointSet& s) { return s; };
  spec.allowed = orbit_cover(sys, tp.eps);
  auto ex = explore_subsets(
      spec, [](const SubsetState&, PointId, const PointSet& to) { return to.empty(); }, budget);
  if (ex.bad_from) {
    Counterexample c{ex.walk_to(*ex.bad_from), {}, false, {}};
    c.walk.push_back(*ex.bad_next);
    return Verdict::fail(std::move(c), ex.states.size());
  }
  return Verdict::pass(StateSetWitness{std::move(ex.states)}, ex.index.size());
}

/// Every eventually exact delta-walk must be eps-shadowed by a point whose
/// orbit eventually coincides with the walk. Failure is reported as a prefix
/// followed by the exact orbit of its last point.
inline Verdict decide_slimit_condition2(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                                        std::size_t budget = kDefaultStateBudget) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  const TrackerSpec spec = shadow_tracker(sys, g, tp.eps);
  auto ex = explore_subsets(
      spec, [](const SubsetState&, PointId, const PointSet&) { return false; }, budget);
  auto good = merge_reachable(spec, ex, sys.map(), [](const SubsetState& s) { return s.set.test(s.node); });
  for (std::size_t s = 0; s < ex.states.size(); ++s)
    if (!good[s]) return Verdict::fail(Counterexample{ex.walk_to(s), {}, true, {}}, ex.states.size());
  return Verdict::pass(StateSetWitness{std::move(ex.states)}, ex.index.size());
}

/// Both conditions of s-limit shadowing at one threshold pair.
inline Verdict decide_slimit(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                             std::size_t budget = kDefaultStateBudget) {
  Verdict a = decide_shadowing(sys, tp, budget);
  if (!a.holds) return a;
  Verdict b = decide_slimit_condition2(sys, tp, budget);
  b.states_explored += a.states_explored;
  return b;
}

/// f^k(X) for k = 0..n; constant from index n on.
inline std::vector<PointSet> image_chain(const FiniteMetricSystem& sys) {
  std::vector<PointSet> chain{PointSet::full(sys.size())};
  for (std::size_t k = 0; k < sys.size(); ++k) chain.push_back(sys.image(chain.back()));
  return chain;
}

inline Verdict decide_eventual_shadowing(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                                         std::size_t budget = kDefaultStateBudget) {
  const DeltaGraph g = delta_graph(sys, tp.delta);
  EventualSpec spec{shadow_tracker(sys, g, tp.eps), image_chain(sys)};
  return decide_eventual_engine(spec, budget);
}

}  // namespace shadowlab
