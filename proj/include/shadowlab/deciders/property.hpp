#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shadowlab/deciders/inverse.hpp"
#include "shadowlab/deciders/limit.hpp"
#include "shadowlab/deciders/shadowing.hpp"
#include "shadowlab/deciders/strong_orbital.hpp"
#include "shadowlab/deciders/visited_sets.hpp"
#include "shadowlab/errors.hpp"

namespace shadowlab {

enum class Property {
  Shadowing,
  HShadowing,
  Eventual,
  Orbital,
  StrongOrbital,
  Weak1,
  Weak2,
  Limit,
  SLimit,
  SLimit2,
  OrbitalLimit,
  Inverse,
};

inline constexpr std::array<std::pair<Property, std::string_view>, 12> kPropertyNames{{
    {Property::Shadowing, "shadowing"},
    {Property::HShadowing, "h-shadowing"},
    {Property::Eventual, "eventual"},
    {Property::Orbital, "orbital"},
    {Property::StrongOrbital, "strong-orbital"},
    {Property::Weak1, "weak1"},
    {Property::Weak2, "weak2"},
    {Property::Limit, "limit"},
    {Property::SLimit, "slimit"},
    {Property::SLimit2, "slimit2"},
    {Property::OrbitalLimit, "orbital-limit"},
    {Property::Inverse, "inverse"},
}};

inline std::string_view property_name(Property p) {
  for (const auto& [q, name] : kPropertyNames)
    if (q == p) return name;
  return "?";
}

inline Property parse_property(std::string_view name) {
  for (const auto& [q, n] : kPropertyNames)
    if (n == name) return q;
  throw InputError("unknown property '" + std::string(name) + "'");
}

/// Limit and orbital limit shadowing take no thresholds on finite systems.
inline bool threshold_free(Property p) { return p == Property::Limit || p == Property::OrbitalLimit; }

struct DecideOptions {
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

/// Fixed-threshold decision. Strong orbital shadowing has only a bounded
/// refuter and is rejected here.
inline Verdict decide(const FiniteMetricSystem& sys, Property p, const ThresholdPair& tp,
                      const DecideOptions& opt = {}) {
  switch (p) {
    case Property::Shadowing: return decide_shadowing(sys, tp, opt.state_budget);
    case Property::HShadowing: return decide_h_shadowing(sys, tp, opt.state_budget);
    case Property::Eventual: return decide_eventual_shadowing(sys, tp, opt.state_budget);
    case Property::Orbital: return decide_orbital_shadowing(sys, tp, opt.enumeration_cap);
    case Property::Weak1: return decide_weak1(sys, tp, opt.state_budget);
    case Property::Weak2: return decide_weak2(sys, tp, opt.enumeration_cap);
    case Property::Limit: return decide_limit_shadowing(sys);
    case Property::SLimit: return decide_slimit(sys, tp, opt.state_budget);
    case Property::SLimit2: return decide_slimit_condition2(sys, tp, opt.state_budget);
    case Property::OrbitalLimit: return decide_orbital_limit_shadowing(sys);
    case Property::Inverse: return decide_inverse_shadowing(sys, tp);
    case Property::StrongOrbital: break;
  }
  throw DomainError("strong-orbital has no exact decider; use the bounded refuter");
}

struct LevelRow {
  Rational eps;
  /// Largest grid delta that passes, if any.
  std::optional<Rational> delta;
  std::size_t states_explored = 0;
};

struct PropertyLevel {
  bool holds = false;
  std::vector<LevelRow> rows;
};

/// The property itself (for every eps some delta works), checked over the
/// grid: verdicts can only change at grid values.
inline PropertyLevel property_level(const FiniteMetricSystem& sys, Property p, const ThresholdGrid& grid,
                                    const DecideOptions& opt = {}) {
  PropertyLevel out;
  out.holds = true;
  if (threshold_free(p)) {
    const Verdict v = decide(sys, p, ThresholdPair::make(1, 1), opt);
    out.holds = v.holds;
    for (const auto& e : grid.values) out.rows.push_back({e, grid.values.back(), v.states_explored});
    return out;
  }
  for (const auto& e : grid.values) {
    LevelRow row{e, std::nullopt, 0};
    for (auto it = grid.values.rbegin(); it != grid.values.rend(); ++it) {
      const Verdict v = decide(sys, p, ThresholdPair::make(e, *it), opt);
      row.states_explored += v.states_explored;
      if (v.holds) {
        row.delta = *it;
        break;
      }
    }
    if (!row.delta) out.holds = false;
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline PropertyLevel property_level(const FiniteMetricSystem& sys, Property p, const DecideOptions& opt = {}) {
  return property_level(sys, p, threshold_grid(sys.space()), opt);
}

}  // namespace shadowlab
