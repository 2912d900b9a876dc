#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shadowlab/deciders.hpp"
#include "shadowlab/lifting.hpp"

using namespace shadowlab;
using namespace testing_support;

namespace {

Rational q(const char* s) { return parse_rational(s); }
AlpThresholds th(const char* v, const char* d, const char* w) { return AlpThresholds::make(q(v), q(d), q(w)); }

FactorMapSpec identity_spec(const FiniteMetricSystem& sys) {
  std::vector<PointId> phi(sys.size());
  for (PointId i = 0; i < sys.size(); ++i) phi[i] = i;
  return {sys, sys, phi};
}

const std::vector<FactorMapSpec>& family() {
  static const std::vector<FactorMapSpec> fam = enumerate_factor_maps(3);
  return fam;
}

std::vector<AlpThresholds> grid_triples(const FactorMapSpec& spec) {
  std::vector<AlpThresholds> out;
  const auto g = joint_grid(spec);
  for (const auto& v : g.values)
    for (const auto& d : g.values)
      for (const auto& w : g.values) out.push_back(AlpThresholds::make(v, d, w));
  return out;
}

const FiniteMetricSystem rho = system_of(line(3), {1, 2, 1});
const FiniteMetricSystem two_cycle = system_of(discrete(2), {1, 0});
const FiniteMetricSystem point = system_of(discrete(1), {0});

}  // namespace

TEST(Lifting, NamesRoundTrip) {
  for (const auto& [p, name] : kLiftNames) EXPECT_EQ(parse_lift_property(name), p);
  EXPECT_THROW(parse_lift_property("almost"), InputError);
  EXPECT_THROW(AlpThresholds::make(0, 1, 1), DomainError);
}

TEST(Lifting, RejectsNonFactorMaps) {
  // phi = id does not intertwine a 2-cycle with the identity.
  FactorMapSpec bad{two_cycle, system_of(discrete(2), {0, 1}), {0, 1}};
  EXPECT_THROW(decide_alp_fixed(bad, th("1", "1", "1")), DomainError);
  FactorMapSpec not_onto{point, system_of(discrete(2), {0, 1}), {0}};
  EXPECT_THROW(decide_lift(not_onto, LiftProperty::ALAP, th("1", "1", "1")), DomainError);
}

TEST(Alp, IdentityLiftsEverything) {
  for (const auto& sys : {rho, two_cycle, system_of(line(4), {0, 0, 3, 1})}) {
    const auto spec = identity_spec(sys);
    for (const char* v : {"1/2", "1", "3"})
      for (auto [d, w] : {std::pair{"1/2", "1/2"}, {"3/2", "1"}, {"3", "3"}}) {
        const auto t = th(v, d, w);
        for (auto p : {LiftProperty::ALP, LiftProperty::EALP, LiftProperty::OALP, LiftProperty::W1ALP,
                       LiftProperty::ALAP, LiftProperty::ALAEP, LiftProperty::OALAP})
          EXPECT_TRUE(decide_lift(spec, p, t).holds) << lift_name(p);
        EXPECT_NE(decide_soalp_bounded(spec, t, 6).status, BoundedVerdict::Status::Refuted);
      }
    EXPECT_TRUE(lift_property_level(spec, LiftProperty::ALP).holds);
  }
}

TEST(Alp, ProjectionFromProduct) {
  const auto spec = projection_spec({rho, two_cycle}, 0);
  for (const char* v : {"1/2", "2"})
    for (auto [d, w] : {std::pair{"1/2", "1/2"}, {"2", "3/2"}, {"3", "3"}})
      EXPECT_TRUE(decide_alp_fixed(spec, th(v, d, w)).holds);
  // Upstairs walks tighter than downstairs ones cannot follow a jump.
  const Verdict v = decide_alp_fixed(spec, th("1/2", "1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.counterexample->walk.size(), 2u);
}

TEST(Alp, CollapseOfTwoCycle) {
  // Constant codomain walks lift as the exact 2-cycle, however rigid the lifts.
  const FactorMapSpec spec{two_cycle, point, {0, 0}};
  const auto t = th("1/2", "1/2", "5");
  const Verdict v = decide_alp_fixed(spec, t);
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(verify_lift_certificate(spec, LiftProperty::ALP, t, v).ok);
}

TEST(Alp, ShortestBlockingWalk) {
  // Upstairs every point jumps to p0 exactly; downstairs may sit at p1.
  const FactorMapSpec spec{system_of(line(3), {0, 0, 0}), system_of(discrete(2), {0, 0}), {0, 0, 1}};
  const Verdict v = decide_alp_fixed(spec, th("1/2", "1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.counterexample->walk.size(), 2u);
  EXPECT_EQ(v.counterexample->walk.back(), 1u);
}

TEST(W1alp, StrictlyWeakerThanAlp) {
  // Found by exhaustive search over maps on at most 3 points: the lift cannot
  // stay on p2 but a walk p2, p0, p0, ... covers both codomain points.
  const FactorMapSpec spec{system_of(line(3), {0, 0, 0}), system_of(discrete(2), {0, 0}), {0, 0, 1}};
  const auto t = th("1/2", "1/2", "3/2");
  EXPECT_FALSE(decide_alp_fixed(spec, t).holds);
  const Verdict w = decide_w1alp_fixed(spec, t);
  EXPECT_TRUE(w.holds);
  EXPECT_TRUE(verify_lift_certificate(spec, LiftProperty::W1ALP, t, w).ok);
}

TEST(Lifting, StrictnessFoundBySearch) {
  std::size_t strict = 0;
  for (const auto& spec : family())
    for (const auto& t : grid_triples(spec))
      if (!decide_alp_fixed(spec, t).holds && decide_w1alp_fixed(spec, t).holds) ++strict;
  EXPECT_GT(strict, 0u);
}

TEST(Lifting, WeakeningOrder) {
  for (const auto& spec : family())
    for (const auto& t : grid_triples(spec)) {
      if (decide_alp_fixed(spec, t).holds) {
        EXPECT_TRUE(decide_ealp_fixed(spec, t).holds);
        EXPECT_TRUE(decide_oalp_fixed(spec, t).holds);
        EXPECT_TRUE(decide_w1alp_fixed(spec, t).holds);
      }
      if (decide_alaep_fixed(spec, t).holds) {
        EXPECT_TRUE(decide_alap(spec).holds);
      }
    }
}

TEST(Lifting, AlaepCanFailWhereAlpHolds) {
  // a -> a, b -> a, c -> c on a line, with the identity: after a jump from a
  // to c the only close lift sits at b, whose steps never climb back to c.
  const auto spec = identity_spec(system_of(line(3), {0, 0, 2}));
  const auto t = th("3/2", "3/2", "3");
  EXPECT_TRUE(decide_alp_fixed(spec, t).holds);
  const Verdict v = decide_alaep_fixed(spec, t);
  ASSERT_FALSE(v.holds);
  EXPECT_TRUE(v.counterexample->exact_tail);
  EXPECT_TRUE(verify_lift_certificate(spec, LiftProperty::ALAEP, t, v).ok);
}

TEST(Lifting, AsymptoticVariantsHoldOnFactorMaps) {
  for (const auto& spec : family()) {
    const Verdict a = decide_alap(spec), o = decide_oalap(spec);
    EXPECT_TRUE(a.holds && o.holds);
    EXPECT_TRUE(verify_lift_certificate(spec, LiftProperty::ALAP, th("1", "1", "1"), a).ok);
  }
}

TEST(Soalp, BoundedRefuter) {
  const auto& fam = family();
  for (std::size_t k = 0; k < fam.size(); k += 11)
    for (const auto& t : grid_triples(fam[k])) {
      const auto& spec = fam[k];
      const BoundedVerdict b = decide_soalp_bounded(spec, t, 4);
      // Every-tail closeness implies closeness of the whole visited sets.
      if (!decide_oalp_fixed(spec, t).holds) {
        EXPECT_EQ(b.status, BoundedVerdict::Status::Refuted);
      }
      if (b.status == BoundedVerdict::Status::Refuted) {
        EXPECT_FALSE(b.implied_by_shadowing);
        EXPECT_TRUE(cert::is_lasso(spec.codomain, *b.counterexample, t.down));
      }
    }
  EXPECT_THROW(decide_lift(identity_spec(rho), LiftProperty::SOALP, th("1", "1", "1")), DomainError);
}

TEST(LiftCertificates, AllVerdictsRevalidate) {
  const auto& fam = family();
  for (std::size_t k = 0; k < fam.size(); k += 3)
    for (const auto& t : grid_triples(fam[k]))
      for (auto p : {LiftProperty::ALP, LiftProperty::EALP, LiftProperty::OALP, LiftProperty::W1ALP,
                     LiftProperty::ALAEP, LiftProperty::OALAP}) {
        const auto c = verify_lift_certificate(fam[k], p, t, decide_lift(fam[k], p, t));
        EXPECT_TRUE(c.ok) << lift_name(p) << ": " << c.reason;
      }
}

TEST(LiftCertificates, TamperingRejected) {
  const FactorMapSpec spec{system_of(line(3), {0, 0, 0}), system_of(discrete(2), {0, 0}), {0, 0, 1}};
  const auto t = th("1/2", "1/2", "3/2");
  Verdict f = decide_alp_fixed(spec, t);
  ASSERT_FALSE(f.holds);
  f.counterexample->walk = {0, 0};
  EXPECT_FALSE(verify_lift_certificate(spec, LiftProperty::ALP, t, f).ok);

  const auto id = identity_spec(rho);
  Verdict v = decide_alp_fixed(id, th("1/2", "1/2", "1/2"));
  ASSERT_TRUE(v.holds);
  std::get<StateSetWitness>(*v.witness).states.pop_back();
  EXPECT_FALSE(verify_lift_certificate(id, LiftProperty::ALP, th("1/2", "1/2", "1/2"), v).ok);

  Verdict w = decide_w1alp_fixed(spec, t);
  auto& cover = std::get<LiftCoverWitness>(*w.witness);
  cover.down.pop_back();
  cover.up.pop_back();
  EXPECT_FALSE(verify_lift_certificate(spec, LiftProperty::W1ALP, t, w).ok);
}

TEST(Preservation, Examples) {
  const auto id = identity_spec(rho);
  const auto r = verify_preservation(id, Property::Shadowing);
  EXPECT_TRUE(r.domain_has && r.lift_has && r.codomain_has);
  EXPECT_FALSE(r.violation());
  EXPECT_FALSE(verify_preservation(projection_spec({rho, two_cycle}, 0), Property::Shadowing).violation());
  EXPECT_EQ(governing_lift(Property::Eventual), LiftProperty::EALP);
  EXPECT_EQ(governing_lift(Property::Weak2), std::nullopt);
  EXPECT_THROW(verify_preservation(id, Property::StrongOrbital), DomainError);
  const FactorMapSpec onto_point{rho, point, {0, 0, 0}};
  EXPECT_FALSE(verify_preservation(onto_point, Property::Inverse).applicable);
}

TEST(Preservation, CodomainShadowingGivesAlp) {
  for (const auto& spec : family())
    if (property_level(spec.codomain, Property::Shadowing).holds) {
      EXPECT_TRUE(lift_property_level(spec, LiftProperty::ALP).holds);
    }
}

TEST(Preservation, NoViolationsOnFamily) {
  for (const auto& spec : family())
    for (const auto& [p, name] : kPropertyNames) {
      if (p == Property::StrongOrbital) continue;
      const auto r = verify_preservation(spec, p);
      EXPECT_FALSE(r.violation()) << name;
    }
}
