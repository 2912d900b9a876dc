#include <gtest/gtest.h>

#include <random>

#include "shadowlab/json_io.hpp"
#include "shadowlab/random_system.hpp"
#include "shadowlab/space.hpp"

using namespace shadowlab;

namespace {

Rational q(const char* s) { return parse_rational(s); }

FiniteMetricSpace from_rows(std::vector<std::vector<Rational>> rows) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back(std::string(1, char('a' + i)));
  return FiniteMetricSpace(labels, rows);
}

PointSet set_of(std::size_t n, std::initializer_list<PointId> xs) {
  PointSet s(n);
  for (auto x : xs) s.set(x);
  return s;
}

// Textbook Hausdorff distance straight from the rationals.
Rational naive_hausdorff(const PointSet& a, const PointSet& b, const FiniteMetricSpace& sp) {
  auto dir = [&](const PointSet& x, const PointSet& y) {
    Rational worst = 0;
    for (auto i : x.members()) {
      Rational best = -1;
      for (auto j : y.members())
        if (best < 0 || sp.d(i, j) < best) best = sp.d(i, j);
      if (best > worst) worst = best;
    }
    return worst;
  };
  Rational u = dir(a, b), v = dir(b, a);
  return u > v ? u : v;
}

}  // namespace

TEST(Rational, CanonicalForms) {
  EXPECT_EQ(q("3/4"), Rational(3, 4));
  EXPECT_EQ(q("-3/4"), Rational(-3, 4));
  EXPECT_EQ(q("0"), Rational(0));
  EXPECT_EQ(q("12"), Rational(12));
  for (const char* bad : {"", "1/0", "2/4", "3/-4", "03/4", "1/1", "-0", "0/3", "1.5", "a", "1/", "/2", "+1"})
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
}

TEST(ValidateSpace, Examples) {
  EXPECT_TRUE(validate_space(from_rows({{0}})).empty());
  EXPECT_TRUE(validate_space(line_space(3)).empty());
  auto bad = from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  auto v = validate_space(bad);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, MetricViolation::Kind::Triangle);
  EXPECT_EQ(v[0].i, 0u);
  EXPECT_EQ(v[0].j, 1u);
  EXPECT_EQ(v[0].k, 2u);
}

TEST(ValidateSpace, OtherAxioms) {
  auto v = validate_space(from_rows({{1, 1}, {2, 0}}));
  int diag = 0, asym = 0;
  for (const auto& m : v) {
    diag += m.kind == MetricViolation::Kind::NonzeroDiagonal;
    asym += m.kind == MetricViolation::Kind::Asymmetric;
  }
  EXPECT_EQ(diag, 1);
  EXPECT_EQ(asym, 1);
  auto z = validate_space(from_rows({{0, 0}, {0, 0}}));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].kind, MetricViolation::Kind::NonPositive);
}

TEST(ValidateSpace, DimensionMismatchIsStructural) {
  EXPECT_THROW(from_rows({{0, 1}, {1}}), StructuralError);
  EXPECT_THROW(FiniteMetricSpace({"a"}, std::vector<std::vector<Rational>>{{0}, {0}}), StructuralError);
}

TEST(Hausdorff, Examples) {
  auto sp = line_space(3);
  EXPECT_EQ(hausdorff_distance(set_of(3, {0, 2}), set_of(3, {0, 2}), sp), 0);
  EXPECT_EQ(hausdorff_distance(set_of(3, {0}), set_of(3, {1, 2}), sp), 2);
  EXPECT_EQ(hausdorff_distance(set_of(3, {0, 2}), set_of(3, {1}), sp), 1);
  EXPECT_THROW(hausdorff_distance(PointSet(3), set_of(3, {1}), sp), DomainError);
}

TEST(Hausdorff, MetricAxiomsOnRandomSubsets) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    // Random valid metric: shortest paths over random positive weights.
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = ratio(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 3));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (w[i][k] + w[k][j] < w[i][j]) w[i][j] = w[i][k] + w[k][j];
    auto sp = from_rows(w);
    ASSERT_TRUE(validate_space(sp).empty());
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    auto pick = [&] { return PointSet::from_mask(n, 1 + rng() % full); };
    for (int r = 0; r < 20; ++r) {
      PointSet a = pick(), b = pick(), c = pick();
      Rational ab = hausdorff_distance(a, b, sp);
      EXPECT_EQ(ab, naive_hausdorff(a, b, sp));
      EXPECT_EQ(ab, hausdorff_distance(b, a, sp));
      EXPECT_EQ(ab == 0, a == b);
      EXPECT_LE(hausdorff_distance(a, c, sp), ab + hausdorff_distance(b, c, sp));
    }
  }
}

TEST(ThresholdGrid, Examples) {
  EXPECT_EQ(threshold_grid(from_rows({{0}})).values, std::vector<Rational>{Rational(1)});
  auto two = threshold_grid(discrete_space(2)).values;
  EXPECT_EQ(two, (std::vector<Rational>{q("1/2"), q("1"), q("3/2")}));
  auto line = threshold_grid(line_space(3)).values;
  for (const char* v : {"1/2", "1", "3/2", "2"})
    EXPECT_NE(std::find(line.begin(), line.end(), q(v)), line.end()) << v;
  for (std::size_t i = 1; i < line.size(); ++i) EXPECT_LT(line[i - 1], line[i]);
}

TEST(Orbits, Examples) {
  auto sp = line_space(3);
  FiniteMetricSystem constant(sp, {1, 1, 1});
  EXPECT_EQ(orbit_set(constant, 0), set_of(3, {0, 1}));
  FiniteMetricSystem cycle(sp, {1, 2, 0});
  EXPECT_EQ(orbit_set(cycle, 0), set_of(3, {0, 1, 2}));
  EXPECT_EQ(omega_limit_set(cycle, 2), set_of(3, {0, 1, 2}));
  FiniteMetricSystem rho(sp, {1, 2, 1});
  EXPECT_EQ(orbit_set(rho, 0), set_of(3, {0, 1, 2}));
  EXPECT_EQ(omega_limit_set(rho, 0), set_of(3, {1, 2}));
  FiniteMetricSystem fixed(sp, {0, 0, 2});
  EXPECT_EQ(omega_limit_set(fixed, 2), set_of(3, {2}));
}

TEST(Orbits, OmegaIsOrbitAfterTransient) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    auto sys = random_system(rng, 1 + rng() % 7, MetricFamily::Discrete);
    for (PointId s = 0; s < sys.size(); ++s)
      EXPECT_EQ(omega_limit_set(sys, s), orbit_set(sys, sys.iterate(s, sys.size())));
  }
}

TEST(Json, RoundTripAndErrors) {
  FiniteMetricSystem sys(line_space(3), {1, 2, 1});
  auto j = system_to_json(sys);
  auto back = system_from_json(j);
  EXPECT_EQ(back.map(), sys.map());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.d(i, k), sys.d(i, k));
  EXPECT_THROW(parse_json_text("{\"points\": [", "x"), InputError);
  auto bad = j;
  bad["map"] = {0, 5, 1};
  EXPECT_THROW(system_from_json(bad), StructuralError);
  bad = j;
  bad["surjective"] = true;
  EXPECT_THROW(system_from_json(bad), StructuralError);
  bad = j;
  bad["metric"][0][1] = "2/4";
  EXPECT_THROW(system_from_json(bad), InputError);
}

TEST(AllSystems, Counts) {
  EXPECT_EQ(all_systems(1, MetricFamily::Line).size(), 1u);
  EXPECT_EQ(all_systems(2, MetricFamily::Line).size(), 4u);
  EXPECT_EQ(all_systems(3, MetricFamily::Discrete).size(), 27u);
}
