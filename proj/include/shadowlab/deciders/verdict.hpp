#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "shadowlab/point_set.hpp"
#include "shadowlab/space.hpp"

namespace shadowlab {

/// A finite walk, optionally describing an infinite one: a lasso repeats
/// walk[loop_start..] forever, and `exact_tail` continues by the true orbit of
/// the last point.
struct Counterexample {
  std::vector<PointId> walk;
  std::optional<std::size_t> loop_start;
  bool exact_tail = false;
  /// Inverse shadowing: the point whose orbit no start can track.
  std::optional<PointId> target;
};

/// A subset-automaton state: walk node plus tracked set.
struct SubsetState {
  PointId node = 0;
  PointSet set;
  bool operator==(const SubsetState&) const = default;
};

struct SubsetStateHash {
  std::size_t operator()(const SubsetState& s) const { return s.set.hash() * 31u + s.node; }
};

/// All reachable automaton states; certificates check closure under the
/// transition law and that no state violates the property.
struct StateSetWitness {
  std::vector<SubsetState> states;
};

/// Configuration of the reset-on-death tracker for eventual properties.
struct EventualConfig {
  PointId node = 0;
  PointSet tracked;
  std::size_t age = 0;
  bool operator==(const EventualConfig&) const = default;
};

struct EventualConfigHash {
  std::size_t operator()(const EventualConfig& c) const {
    return (c.tracked.hash() * 131u + c.node) * 17u + c.age;
  }
};

/// Reachable configurations; every death edge leaves its strongly connected
/// component, so each walk sees finitely many deaths.
struct EventualWitness {
  std::vector<EventualConfig> configs;
  std::vector<std::pair<std::size_t, std::size_t>> death_edges;
};

/// One entry per realizable visited set, each with the point that handles it.
struct CoverWitness {
  std::vector<PointSet> visited;
  std::vector<PointId> point;
};

/// Per target x: a start y and, per phase t mod p, the safe positions.
struct InverseWitness {
  std::vector<PointId> start;
  std::vector<std::vector<PointSet>> safe;
};

/// Visited sets downstairs matched by realizable visited sets upstairs.
struct LiftCoverWitness {
  std::vector<PointSet> down;
  std::vector<PointSet> up;
};

/// A constructive rule rather than a finite object.
struct RuleWitness {
  std::string rule;
};

using Witness = std::variant<StateSetWitness, EventualWitness, CoverWitness, InverseWitness, LiftCoverWitness,
                             RuleWitness>;

struct Verdict {
  bool holds = false;
  std::optional<Witness> witness;
  std::optional<Counterexample> counterexample;
  std::size_t states_explored = 0;
  std::string note;

  static Verdict pass(Witness w, std::size_t explored, std::string note = {}) {
    Verdict v;
    v.holds = true;
    v.witness = std::move(w);
    v.states_explored = explored;
    v.note = std::move(note);
    return v;
  }
  static Verdict fail(Counterexample c, std::size_t explored, std::string note = {}) {
    Verdict v;
    v.holds = false;
    v.counterexample = std::move(c);
    v.states_explored = explored;
    v.note = std::move(note);
    return v;
  }
};

/// Outcome of a bounded refuter that never claims the property outright.
struct BoundedVerdict {
  enum class Status { Refuted, UnknownAtHorizon };
  Status status = Status::UnknownAtHorizon;
  std::optional<Counterexample> counterexample;
  std::size_t horizon = 0;
  std::size_t lassos_checked = 0;
  bool budget_exhausted = false;
  /// Shadowing holds at the same thresholds, which implies the property.
  bool implied_by_shadowing = false;
};

inline std::string walk_text(const std::vector<PointId>& walk, const FiniteMetricSpace& space) {
  std::string s;
  for (std::size_t i = 0; i < walk.size(); ++i) s += (i ? " " : "") + space.label(walk[i]);
  return s;
}

inline std::string describe(const Counterexample& c, const FiniteMetricSpace& space) {
  std::string s = "cex:" + walk_text(c.walk, space);
  if (c.loop_start) s += " loop@" + std::to_string(*c.loop_start);
  if (c.exact_tail) s += " then-exact";
  if (c.target) s += " target=" + space.label(*c.target);
  return s;
}

inline std::string describe(const Witness& w) {
  struct {
    std::string operator()(const StateSetWitness& x) const {
      return "invariant:" + std::to_string(x.states.size()) + " states";
    }
    std::string operator()(const EventualWitness& x) const {
      return "configs:" + std::to_string(x.configs.size()) + " death-edges:" + std::to_string(x.death_edges.size());
    }
    std::string operator()(const CoverWitness& x) const {
      return "visited-sets:" + std::to_string(x.visited.size());
    }
    std::string operator()(const InverseWitness& x) const {
      return "tracking-starts:" + std::to_string(x.start.size());
    }
    std::string operator()(const LiftCoverWitness& x) const {
      return "lifted-sets:" + std::to_string(x.down.size());
    }
    std::string operator()(const RuleWitness& x) const { return "rule:" + x.rule; }
  } visit;
  return std::visit(visit, w);
}

inline std::string describe(const Verdict& v, const FiniteMetricSpace& space) {
  if (v.counterexample) return describe(*v.counterexample, space);
  if (v.witness) return describe(*v.witness);
  return "-";
}

}  // namespace shadowlab
