#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shadowlab/deciders/property.hpp"
#include "shadowlab/lifting/alp.hpp"

namespace shadowlab {

struct LiftLevelRow {
  Rational closeness;
  Rational up;
  /// Largest grid value for the codomain tightness that passes, if any.
  std::optional<Rational> down;
};

struct LiftLevel {
  bool holds = false;
  std::vector<LiftLevelRow> rows;
};

/// Union of the domain and codomain grids.
inline ThresholdGrid joint_grid(const FactorMapSpec& spec) {
  return merge_grids(threshold_grid(spec.domain.space()), threshold_grid(spec.codomain.space()));
}

/// For every (closeness, up) pair some codomain tightness must work.
inline LiftLevel lift_property_level(const FactorMapSpec& spec, LiftProperty p, const LiftOptions& opt = {}) {
  LiftLevel out;
  out.holds = true;
  const ThresholdGrid g = joint_grid(spec);
  if (threshold_free(p)) {
    out.holds = decide_lift(spec, p, AlpThresholds::make(1, 1, 1), opt).holds;
    return out;
  }
  for (const auto& v : g.values)
    for (const auto& d : g.values) {
      LiftLevelRow row{v, d, std::nullopt};
      for (auto it = g.values.rbegin(); it != g.values.rend(); ++it)
        if (decide_lift(spec, p, AlpThresholds::make(v, d, *it), opt).holds) {
          row.down = *it;
          break;
        }
      if (!row.down) out.holds = false;
      out.rows.push_back(std::move(row));
    }
  return out;
}

/// The lifting property that governs transfer of `p` along factor maps;
/// empty when every factor map transfers it.
inline std::optional<LiftProperty> governing_lift(Property p) {
  switch (p) {
    case Property::Shadowing:
    case Property::HShadowing: return LiftProperty::ALP;
    case Property::Eventual: return LiftProperty::EALP;
    case Property::Orbital: return LiftProperty::OALP;
    case Property::StrongOrbital: return LiftProperty::SOALP;
    case Property::Weak1: return LiftProperty::W1ALP;
    case Property::Limit: return LiftProperty::ALAP;
    case Property::SLimit:
    case Property::SLimit2: return LiftProperty::ALAEP;
    case Property::OrbitalLimit: return LiftProperty::OALAP;
    case Property::Weak2:
    case Property::Inverse: break;
  }
  return std::nullopt;
}

struct PreservationReport {
  Property property{};
  std::optional<LiftProperty> lift;
  /// False when a side is outside the property's domain (inverse shadowing
  /// needs surjective maps).
  bool applicable = true;
  bool domain_has = false;
  bool lift_has = false;
  bool codomain_has = false;
  /// domain and lift => codomain.
  bool forward_ok = true;
  /// codomain => lift.
  bool converse_ok = true;

  bool violation() const { return applicable && !(forward_ok && converse_ok); }
};

/// Evaluates the three property scans and checks both implications.
inline PreservationReport verify_preservation(const FactorMapSpec& spec, Property p, const DecideOptions& dopt = {},
                                              const LiftOptions& lopt = {}) {
  require_factor_map(spec);
  if (p == Property::StrongOrbital) throw DomainError("strong-orbital has no exact decider");
  PreservationReport r;
  r.property = p;
  r.lift = governing_lift(p);
  if (p == Property::Inverse && (!spec.domain.is_surjective() || !spec.codomain.is_surjective())) {
    r.applicable = false;
    return r;
  }
  r.domain_has = property_level(spec.domain, p, dopt).holds;
  r.codomain_has = property_level(spec.codomain, p, dopt).holds;
  r.lift_has = r.lift ? lift_property_level(spec, *r.lift, lopt).holds : true;
  r.forward_ok = !(r.domain_has && r.lift_has) || r.codomain_has;
  r.converse_ok = !r.codomain_has || r.lift_has;
  return r;
}

}  // namespace shadowlab
