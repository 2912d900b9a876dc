#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "shadowlab/deciders.hpp"
#include "shadowlab/random_system.hpp"

using namespace shadowlab;
using namespace testing_support;

namespace {

Rational q(const char* s) { return parse_rational(s); }
ThresholdPair tp(const char* e, const char* d) { return ThresholdPair::make(q(e), q(d)); }

PointSet set_of(std::size_t n, std::initializer_list<PointId> xs) {
  PointSet s(n);
  for (auto x : xs) s.set(x);
  return s;
}

// Small corpus: every map on at most 3 points in both metric families.
std::vector<FiniteMetricSystem> small_family() {
  std::vector<FiniteMetricSystem> out;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto fam : {MetricFamily::Line, MetricFamily::Discrete})
      for (auto& s : all_systems(n, fam)) out.push_back(std::move(s));
  return out;
}

std::vector<FiniteMetricSystem> random_family(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FiniteMetricSystem> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = 1 + rng() % 5;
    out.push_back(random_system(rng, n, k % 2 ? MetricFamily::Discrete : MetricFamily::Line));
  }
  return out;
}

std::vector<ThresholdPair> grid_pairs(const FiniteMetricSystem& sys) {
  std::vector<ThresholdPair> out;
  const auto g = threshold_grid(sys.space());
  for (const auto& e : g.values)
    for (const auto& d : g.values) out.push_back(ThresholdPair::make(e, d));
  return out;
}

const FiniteMetricSystem two_identity = system_of(discrete(2), {0, 1});
const FiniteMetricSystem two_const = system_of(discrete(2), {0, 0});
const FiniteMetricSystem two_cycle = system_of(discrete(2), {1, 0});
const FiniteMetricSystem rho = system_of(line(3), {1, 2, 1});      // a->b->c->b
const FiniteMetricSystem three_cycle = system_of(line(3), {1, 2, 0});

}  // namespace

TEST(DeltaGraph, Examples) {
  auto g = delta_graph(system_of(line(3), {0, 1, 2}), q("3/2"));
  for (PointId i = 0; i < 3; ++i)
    for (PointId j = 0; j < 3; ++j) EXPECT_EQ(g.has_edge(i, j), (i > j ? i - j : j - i) <= 1);
  auto rigid = delta_graph(rho, q("1"));
  for (PointId i = 0; i < 3; ++i) EXPECT_EQ(rigid.succ[i], std::vector<PointId>{rho.f(i)});
  auto full = delta_graph(rho, q("3"));
  for (PointId i = 0; i < 3; ++i) EXPECT_EQ(full.succ[i].size(), 3u);
  EXPECT_THROW(delta_graph(rho, q("0")), DomainError);
}

TEST(Shadowing, Examples) {
  EXPECT_TRUE(decide_shadowing(two_const, tp("1/2", "1/2")).holds);
  EXPECT_TRUE(decide_shadowing(system_of(line(3), {1, 1, 1}), tp("3/2", "3/2")).holds);
  Verdict v = decide_shadowing(two_identity, tp("1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.counterexample->walk, (std::vector<PointId>{0, 1}));
  EXPECT_TRUE(decide_shadowing(two_identity, tp("1/2", "1/2")).holds);
}

// Tracking f^i(z) needs the image taken before intersecting with the next
// ball; doing it the other way round loses exact orbits.
TEST(Shadowing, ImageThenIntersect) {
  const auto& sys = two_cycle;
  const Rational eps = q("1/2");
  const std::vector<PointId> walk{0, 1, 0};
  PointSet right = sys.space().ball(walk[0], eps), wrong = right;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    right = sys.image(right) & sys.space().ball(walk[i], eps);
    wrong = sys.image(wrong & sys.space().ball(walk[i], eps));
  }
  EXPECT_FALSE(right.empty());
  EXPECT_TRUE(wrong.empty());
  EXPECT_TRUE(decide_shadowing(sys, ThresholdPair::make(eps, eps)).holds);
}

TEST(HShadowing, Examples) {
  Verdict v = decide_h_shadowing(two_const, tp("1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.counterexample->walk, (std::vector<PointId>{0, 1}));
  EXPECT_FALSE(decide_h_shadowing(two_const, tp("5", "3/2")).holds);
  EXPECT_TRUE(decide_h_shadowing(two_const, tp("1/2", "1/2")).holds);
  // Counterexamples always have a step: a single point is its own h-shadow.
  for (const auto& sys : small_family())
    for (const auto& t : grid_pairs(sys)) {
      Verdict h = decide_h_shadowing(sys, t);
      if (!h.holds) {
        EXPECT_GE(h.counterexample->walk.size(), 2u);
      }
    }
}

TEST(Eventual, Examples) {
  EXPECT_TRUE(decide_eventual_shadowing(two_const, tp("1/2", "1/2")).holds);
  EXPECT_TRUE(decide_eventual_shadowing(system_of(line(3), {1, 1, 1}), tp("1", "1")).holds);
  Verdict v = decide_eventual_shadowing(two_identity, tp("1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.counterexample->loop_start);
  const auto& w = v.counterexample->walk;
  // The loop must visit both points.
  PointSet loop(2);
  for (std::size_t i = *v.counterexample->loop_start; i < w.size(); ++i) loop.set(w[i]);
  EXPECT_EQ(loop.count(), 2u);
}

// A non-surjective map: restricting spawned sets to f^N(X) matters.
TEST(Eventual, SpawnRestrictedToImage) {
  // c is not in the image; walks hopping onto c must not count c itself as a shadow.
  const auto sys = system_of(line(3), {0, 0, 1});
  for (const auto& t : grid_pairs(sys)) {
    Verdict v = decide_eventual_shadowing(sys, t);
    OracleResult o = oracle(sys, Property::Eventual, t, 7);
    EXPECT_EQ(v.holds, o.holds) << to_string(t.eps) << " " << to_string(t.delta);
  }
}

TEST(Orbital, Examples) {
  EXPECT_TRUE(decide_orbital_shadowing(three_cycle, tp("1/2", "1/2")).holds);
  EXPECT_TRUE(decide_orbital_shadowing(three_cycle, tp("5", "1/2")).holds);
  Verdict v = decide_orbital_shadowing(two_identity, tp("1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  PointSet seen(2);
  for (auto x : v.counterexample->walk) seen.set(x);
  EXPECT_EQ(seen.count(), 2u);
  EXPECT_THROW(decide_orbital_shadowing(system_of(discrete(11), std::vector<PointId>(11, 0)), tp("1", "1")),
               BudgetError);
}

TEST(Orbital, RealizableSets) {
  // a->b->c->b with exact walks: visited sets are tails of orbits.
  auto g = delta_graph(rho, q("1/2"));
  auto sets = realizable_visited_sets(g);
  std::vector<PointSet> want{set_of(3, {1, 2}), set_of(3, {0, 1, 2})};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(sets, want);
  for (const auto& v : sets) {
    Counterexample c = covering_lasso(g, v);
    PointSet cov(3);
    for (auto x : c.walk) cov.set(x);
    EXPECT_EQ(cov, v);
    EXPECT_TRUE(is_pseudo_orbit(rho, c.walk, q("1/2")));
    EXPECT_TRUE(g.has_edge(c.walk.back(), c.walk[*c.loop_start]));
  }
}

TEST(StrongOrbital, BoundedRefuter) {
  auto b = decide_strong_orbital_shadowing(two_const, tp("1/2", "1/2"), 6);
  EXPECT_EQ(b.status, BoundedVerdict::Status::UnknownAtHorizon);
  EXPECT_TRUE(b.implied_by_shadowing);
  auto r = decide_strong_orbital_shadowing(two_identity, tp("1/2", "3/2"), 4);
  EXPECT_EQ(r.status, BoundedVerdict::Status::Refuted);
  EXPECT_FALSE(r.implied_by_shadowing);
  EXPECT_TRUE(verify_certificate(two_identity, tp("1/2", "3/2"), r).ok);
  EXPECT_THROW(decide_strong_orbital_shadowing(two_const, tp("1", "1"), 0), DomainError);
  // Shadowing true means nothing is ever refuted.
  for (const auto& sys : small_family())
    for (const auto& t : grid_pairs(sys))
      if (decide_shadowing(sys, t).holds) {
        EXPECT_NE(decide_strong_orbital_shadowing(sys, t, 5).status, BoundedVerdict::Status::Refuted);
      }
}

TEST(Weak1, Examples) {
  Verdict v = decide_weak1(two_identity, tp("1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.counterexample->walk.size(), 2u);
  EXPECT_TRUE(decide_weak1(two_identity, tp("2", "3/2")).holds);
  EXPECT_TRUE(decide_weak1(rho, tp("3", "5")).holds);
}

TEST(Weak2, Examples) {
  EXPECT_TRUE(decide_weak2(two_identity, tp("1/2", "1/2")).holds);
  EXPECT_TRUE(decide_weak2(two_identity, tp("1/2", "3/2")).holds);
  for (const auto& sys : small_family()) EXPECT_TRUE(property_level(sys, Property::Weak2).holds);
}

TEST(Limit, RuleAndIct) {
  for (const auto& sys : small_family()) {
    EXPECT_TRUE(decide_limit_shadowing(sys).holds);
    EXPECT_TRUE(decide_orbital_limit_shadowing(sys).holds);
    EXPECT_EQ(omega_family(sys), enumerate_ict_sets(sys));
    EXPECT_EQ(enumerate_ict_sets(sys), periodic_cycles(sys));
  }
  EXPECT_EQ(enumerate_ict_sets(rho), (std::vector<PointSet>{set_of(3, {1, 2})}));
  EXPECT_EQ(enumerate_ict_sets(system_of(line(3), {0, 1, 2})),
            (std::vector<PointSet>{set_of(3, {0}), set_of(3, {1}), set_of(3, {2})}));
  EXPECT_EQ(enumerate_ict_sets(three_cycle), (std::vector<PointSet>{set_of(3, {0, 1, 2})}));
  EXPECT_EQ(enumerate_ict_sets(system_of(line(3), {2, 2, 2})), (std::vector<PointSet>{set_of(3, {2})}));
  EXPECT_THROW(enumerate_ict_sets(system_of(discrete(17), std::vector<PointId>(17, 0))), BudgetError);
  // Tail from c at index 5 (period 2 cycle b,c): z must land in phase with it.
  const PointId z = limit_shadow_point(rho, 2, 5);
  for (std::size_t i = 5; i < 12; ++i) EXPECT_EQ(rho.iterate(z, i), rho.iterate(2, i - 5));
}

TEST(SLimit, Examples) {
  EXPECT_TRUE(decide_slimit_condition2(rho, tp("1/2", "1/2")).holds);
  Verdict v = decide_slimit_condition2(two_const, tp("1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  EXPECT_TRUE(v.counterexample->exact_tail);
  EXPECT_TRUE(verify_certificate(two_const, Property::SLimit2, tp("1/2", "3/2"), v).ok);
  // With eps above every distance the constant map shadows anything and merges.
  EXPECT_TRUE(decide_slimit_condition2(two_const, tp("2", "3/2")).holds);
}

// Property level: s-limit equals its second condition alone.
TEST(SLimit, PropertyScansAgree) {
  for (const auto& sys : small_family())
    EXPECT_EQ(property_level(sys, Property::SLimit).holds, property_level(sys, Property::SLimit2).holds);
  for (const auto& sys : random_family(40, 11))
    EXPECT_EQ(property_level(sys, Property::SLimit).holds, property_level(sys, Property::SLimit2).holds);
}

TEST(Inverse, Examples) {
  EXPECT_TRUE(decide_inverse_shadowing(system_of(discrete(1), {0}), tp("1", "1")).holds);
  EXPECT_TRUE(decide_inverse_shadowing(two_cycle, tp("1/2", "1/2")).holds);
  Verdict v = decide_inverse_shadowing(two_cycle, tp("1/2", "3/2"));
  ASSERT_FALSE(v.holds);
  EXPECT_TRUE(v.counterexample->target);
  EXPECT_TRUE(verify_certificate(two_cycle, Property::Inverse, tp("1/2", "3/2"), v).ok);
  EXPECT_THROW(decide_inverse_shadowing(two_const, tp("1", "1")), DomainError);
}

// Both quantifier orders agree on every permutation of at most 4 points.
TEST(Inverse, StrategyOrderAgrees) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto fam : {MetricFamily::Line, MetricFamily::Discrete})
      for (const auto& sys : all_systems(n, fam)) {
        if (!sys.is_surjective()) continue;
        for (const auto& t : grid_pairs(sys))
          EXPECT_EQ(decide_inverse_shadowing(sys, t).holds, inverse_by_strategies(sys, t));
      }
}

TEST(PropertyLevel, Examples) {
  auto s = property_level(two_identity, Property::Shadowing);
  EXPECT_TRUE(s.holds);
  for (const auto& row : s.rows) EXPECT_TRUE(row.delta);
  EXPECT_TRUE(property_level(rho, Property::Limit).holds);
  EXPECT_THROW(property_level(rho, Property::StrongOrbital), DomainError);
  EXPECT_EQ(parse_property("h-shadowing"), Property::HShadowing);
  EXPECT_THROW(parse_property("nope"), InputError);
}

// Verdicts only change at grid values: a threshold strictly between two grid
// neighbours behaves like both of its neighbours' midpoints.
TEST(PropertyLevel, GridMonotonicity) {
  for (const auto& sys : random_family(30, 5)) {
    const auto g = threshold_grid(sys.space()).values;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      const Rational inner = (3 * g[i] + g[i + 1]) / 4;
      const Rational mid = (g[i] + g[i + 1]) / 2;
      for (const auto& d : g)
        for (auto p : {Property::Shadowing, Property::Weak1, Property::Eventual})
          EXPECT_EQ(decide(sys, p, ThresholdPair::make(inner, d)).holds,
                    decide(sys, p, ThresholdPair::make(mid, d)).holds);
    }
  }
}

TEST(Oracle, AgreesWithNaiveEnumeration) {
  for (const auto& sys : small_family())
    for (const auto& t : grid_pairs(sys)) {
      EXPECT_EQ(oracle(sys, Property::Shadowing, t, 5).holds, naive_shadowing(sys, t.eps, t.delta, 6));
      EXPECT_EQ(oracle(sys, Property::HShadowing, t, 5).holds, naive_h_shadowing(sys, t.eps, t.delta, 6));
    }
}

TEST(Oracle, HorizonOneIsUncertified) {
  for (auto p : {Property::Shadowing, Property::HShadowing, Property::Weak1, Property::SLimit2}) {
    auto r = oracle(rho, p, tp("1/2", "3/2"), 1);
    EXPECT_FALSE(r.certified);
  }
  EXPECT_THROW(oracle(rho, Property::Shadowing, tp("1", "1"), 0), DomainError);
}

// Exact deciders agree with the bounded oracle at its certified horizon.
TEST(Oracle, EquivalenceWithDeciders) {
  auto corpus = small_family();
  for (auto& s : random_family(60, 3)) corpus.push_back(std::move(s));
  const Property props[] = {Property::Shadowing, Property::HShadowing, Property::Weak1, Property::SLimit2,
                            Property::Inverse};
  for (const auto& sys : corpus)
    for (const auto& t : grid_pairs(sys))
      for (auto p : props) {
        if (p == Property::Inverse && !sys.is_surjective()) continue;
        const Verdict v = decide(sys, p, t);
        const std::size_t h = oracle(sys, p, t, 1).required_horizon.value();
        const OracleResult o = oracle(sys, p, t, h);
        ASSERT_TRUE(o.certified);
        EXPECT_EQ(v.holds, o.holds) << property_name(p) << " eps=" << to_string(t.eps)
                                    << " delta=" << to_string(t.delta);
      }
}

// At a fixed pair weak2 can fail; the property holds because for each eps the
// scan finds a delta, and the oracle must confirm that delta.
TEST(Oracle, Weak2AlwaysHolds) {
  for (const auto& sys : random_family(40, 9)) {
    const auto level = property_level(sys, Property::Weak2);
    ASSERT_TRUE(level.holds);
    for (const auto& row : level.rows)
      EXPECT_TRUE(oracle(sys, Property::Weak2, ThresholdPair::make(row.eps, *row.delta), 5).holds);
  }
}

TEST(Oracle, LassoPropertiesAgree) {
  for (const auto& sys : small_family())
    for (const auto& t : grid_pairs(sys))
      for (auto p : {Property::Eventual, Property::Orbital, Property::Weak2})
        EXPECT_EQ(decide(sys, p, t).holds, oracle(sys, p, t, 7).holds) << property_name(p);
}

// At fixed thresholds: h-shadowing => shadowing => eventual / orbital / weak1 / weak2.
TEST(Implications, FixedThresholds) {
  auto corpus = small_family();
  for (auto& s : random_family(60, 21)) corpus.push_back(std::move(s));
  for (const auto& sys : corpus)
    for (const auto& t : grid_pairs(sys)) {
      const bool sh = decide_shadowing(sys, t).holds;
      if (decide_h_shadowing(sys, t).holds) {
        EXPECT_TRUE(sh);
      }
      if (!sh) continue;
      EXPECT_TRUE(decide_eventual_shadowing(sys, t).holds);
      EXPECT_TRUE(decide_orbital_shadowing(sys, t).holds);
      EXPECT_TRUE(decide_weak1(sys, t).holds);
      EXPECT_TRUE(decide_weak2(sys, t).holds);
    }
}

TEST(Certificates, AllVerdictsRevalidate) {
  auto corpus = small_family();
  for (auto& s : random_family(40, 17)) corpus.push_back(std::move(s));
  for (const auto& sys : corpus)
    for (const auto& t : grid_pairs(sys))
      for (const auto& [p, name] : kPropertyNames) {
        if (p == Property::StrongOrbital) continue;
        if (p == Property::Inverse && !sys.is_surjective()) continue;
        const Verdict v = decide(sys, p, t);
        const auto c = verify_certificate(sys, p, t, v);
        EXPECT_TRUE(c.ok) << name << ": " << c.reason;
        if (!v.holds && v.counterexample->target == std::nullopt) {
          EXPECT_TRUE(is_pseudo_orbit(sys, v.counterexample->walk, t.delta));
        }
      }
}

TEST(Certificates, TamperedWitnessRejected) {
  Verdict v = decide_shadowing(rho, tp("1/2", "1/2"));
  ASSERT_TRUE(v.holds);
  auto& states = std::get<StateSetWitness>(*v.witness).states;
  states.pop_back();
  EXPECT_FALSE(verify_certificate(rho, Property::Shadowing, tp("1/2", "1/2"), v).ok);
  Verdict f = decide_shadowing(two_identity, tp("1/2", "3/2"));
  f.counterexample->walk = {0, 0};
  EXPECT_FALSE(verify_certificate(two_identity, Property::Shadowing, tp("1/2", "3/2"), f).ok);
}
