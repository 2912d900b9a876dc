#pragma once

#include "shadowlab/deciders/lasso_refuter.hpp"
#include "shadowlab/deciders/shadowing.hpp"

namespace shadowlab {

/// Exact-orbit graph: i -> f(i) only.
inline DeltaGraph orbit_graph(const FiniteMetricSystem& sys) {
  std::vector<PointSet> succ;
  for (PointId i = 0; i < sys.size(); ++i) succ.push_back(PointSet::singleton(sys.size(), sys.f(i)));
  return graph_from_succ(std::move(succ));
}

/// Bounded refuter for strong orbital shadowing: a delta-lasso of at most
/// `horizon` nodes that no orbit matches tail by tail refutes the property.
inline BoundedVerdict decide_strong_orbital_shadowing(const FiniteMetricSystem& sys, const ThresholdPair& tp,
                                                      std::size_t horizon,
                                                      std::size_t lasso_budget = kDefaultLassoBudget) {
  if (horizon == 0) throw DomainError("horizon must be at least 1");
  const DeltaGraph down = delta_graph(sys, tp.delta);
  const DeltaGraph up = orbit_graph(sys);
  LassoCheckSpec spec{&down, &up, sys.space().balls(tp.eps)};
  BoundedVerdict v = refute_by_lassos(spec, horizon, lasso_budget);
  v.implied_by_shadowing = decide_shadowing(sys, tp).holds;
  return v;
}

}  // namespace shadowlab
