#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/pwl/examples.hpp"

namespace shadowlab {

// Rotations are isometries, so the orbit closure of a candidate pair is fixed
// by its offset: {(s, s + g)} on the torus, {{s, s + g}} in the hyperspace.
// The distance from a state to that closure depends only on the state's own
// offset, which reduces the candidate search to a grid over g.

namespace detail {

inline void require_rotation(const PseudoOrbitSpec& s) {
  if (s.kind != StateKind::CirclePair && s.kind != StateKind::CircleSet)
    throw DomainError(s.id + " is not a rotation example");
  for (const auto& st : s.states)
    if (st.size() != 2) throw DomainError(s.id + ": rotation states must hold two points");
}

/// Signed offset y - x mod 1 for torus points; unsigned gap in [0, 1/2] for sets.
inline Rational state_offset(const PseudoOrbitSpec& s, const std::vector<Rational>& st) {
  return s.kind == StateKind::CirclePair ? mod_one(st[1] - st[0]) : circle_distance(st[0], st[1]);
}

inline Rational offset_gap(const PseudoOrbitSpec& s, const Rational& a, const Rational& b) {
  return s.kind == StateKind::CirclePair ? circle_distance(a, b) : abs_value(a - b);
}

/// Grid of candidate offsets: multiples of `res` in [0, 1) or [0, 1/2].
inline std::vector<Rational> offset_grid(const PseudoOrbitSpec& s, const Rational& res) {
  std::vector<Rational> out;
  const Rational top = s.kind == StateKind::CirclePair ? Rational(1) : Rational(1, 2);
  for (Rational g = 0; s.kind == StateKind::CirclePair ? g < top : g <= top; g += res) out.push_back(g);
  return out;
}

}  // namespace detail

/// Distance from a state to the orbit closure of any candidate with offset g.
inline Rational closure_distance(const PseudoOrbitSpec& s, const std::vector<Rational>& st, const Rational& g) {
  return detail::offset_gap(s, detail::state_offset(s, st), g) / 2;
}

enum class SearchStatus { Conclusive, Inconclusive };

struct DefectSearch {
  SearchStatus status = SearchStatus::Inconclusive;
  /// Smallest first-weak-shadowing defect over the grid, and where.
  Rational best_defect;
  Rational best_offset;
  /// Lipschitz constant 1 times the grid resolution.
  Rational slack;
  /// The true minimum over every candidate is at least this.
  Rational lower_bound;
  std::size_t candidates = 0;
  std::size_t steps = 0;
};

/// Largest distance from a state to the candidate's orbit closure, minimized
/// over the grid. Conclusive when best - slack still exceeds eps.
inline DefectSearch rotation_defect_search(const PseudoOrbitSpec& s, const Rational& eps, const Rational& res) {
  detail::require_rotation(s);
  if (res <= 0 || res > 1) throw DomainError("grid resolution must lie in (0, 1]");
  std::vector<Rational> offsets;
  for (const auto& st : s.states) offsets.push_back(detail::state_offset(s, st));
  DefectSearch out;
  bool first = true;
  for (const auto& g : detail::offset_grid(s, res)) {
    Rational worst = 0;
    for (const auto& o : offsets) worst = std::max(worst, Rational(detail::offset_gap(s, o, g) / 2));
    if (first || worst < out.best_defect) {
      out.best_defect = worst;
      out.best_offset = g;
      first = false;
    }
    ++out.candidates;
  }
  out.slack = res;
  out.lower_bound = out.best_defect - out.slack;
  out.status = out.lower_bound > eps ? SearchStatus::Conclusive : SearchStatus::Inconclusive;
  out.steps = s.states.size();
  return out;
}

/// A candidate's omega-limit set holds states of a single offset; the tail of
/// an asymptotic example sweeps a range of offsets. A candidate matches when
/// every tail offset lies within `res` of its own.
struct ProfileSearch {
  std::size_t tail_start = 0;
  Rational tail_min;
  Rational tail_max;
  std::size_t candidates = 0;
  std::size_t matches = 0;
};

inline ProfileSearch limit_profile_search(const PseudoOrbitSpec& s, const Rational& res,
                                          std::optional<std::size_t> tail_start = std::nullopt) {
  detail::require_rotation(s);
  if (res <= 0 || res > 1) throw DomainError("grid resolution must lie in (0, 1]");
  ProfileSearch out;
  out.tail_start = tail_start.value_or(s.states.size() / 2);
  if (out.tail_start >= s.states.size()) throw DomainError("tail starts past the generated window");
  std::vector<Rational> tail;
  for (std::size_t i = out.tail_start; i < s.states.size(); ++i) tail.push_back(detail::state_offset(s, s.states[i]));
  out.tail_min = *std::min_element(tail.begin(), tail.end());
  out.tail_max = *std::max_element(tail.begin(), tail.end());
  for (const auto& g : detail::offset_grid(s, res)) {
    bool all = true;
    for (const auto& o : tail) all = all && detail::offset_gap(s, o, g) <= res;
    out.matches += all;
    ++out.candidates;
  }
  return out;
}

}  // namespace shadowlab
