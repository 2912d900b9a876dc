#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/pwl/circle.hpp"
#include "shadowlab/pwl/pl_map.hpp"
#include "shadowlab/pwl/shadow_run.hpp"

namespace shadowlab {

enum class StateKind {
  Point,          // a point of an interval
  FiniteSet,      // a finite subset of an interval, Hausdorff metric
  CircleSet,      // a finite subset of the circle, Hausdorff metric
  CirclePair,     // a point of the torus, sup metric
  Tuple,          // a point of a finite product of intervals, sup metric
};

struct ExampleParams {
  Rational eps{1, 12};
  Rational delta{1, 24};
  std::size_t horizon = 200;
  /// Order of the symmetric product, or the number of product factors.
  std::size_t n = 3;
  Rational alpha = default_alpha();
};

struct PseudoOrbitSpec {
  std::string id;
  ExampleParams params;
  StateKind kind = StateKind::Point;
  std::optional<PLMap> map;
  std::optional<RotationSystem> rotation;
  /// states[i] lists the rationals of step i: one point, a set, or coordinates.
  std::vector<std::vector<Rational>> states;
  /// defects[i]: distance from the image of step i to step i + 1.
  std::vector<Rational> defects;
  /// Upper bounds the defects must respect in asymptotic examples.
  std::vector<Rational> schedule;
  bool asymptotic = false;
  std::vector<std::pair<std::string, std::string>> notes;

  std::string note(std::string_view key) const {
    for (const auto& [k, v] : notes)
      if (k == key) return v;
    return {};
  }
  std::vector<FinitePointSet> as_sets() const {
    std::vector<FinitePointSet> out;
    for (const auto& s : states) out.push_back(normalized(s));
    return out;
  }
};

inline constexpr std::array<std::string_view, 8> kExampleIds{
    "tent-F3-shadowing",          "tent-F3-limit",
    "cubic-tent-hyper-eventual",  "rotation-hyper-orbital",
    "rotation-product-orbital",   "rotation-product-orbital-limit",
    "rotation-hyper-orbital-limit", "nonsurjective-product-h",
};

namespace detail {

inline Rational circle_hausdorff(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  auto one_side = [](const std::vector<Rational>& p, const std::vector<Rational>& q) {
    Rational worst = 0;
    for (const auto& x : p) {
      Rational best = circle_distance(x, q.front());
      for (const auto& y : q) best = std::min(best, circle_distance(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

inline std::vector<Rational> step_image(const PseudoOrbitSpec& s, const std::vector<Rational>& st) {
  std::vector<Rational> out;
  for (const auto& x : st) out.push_back(s.map ? (*s.map)(x) : (*s.rotation)(x));
  return out;
}

}  // namespace detail

/// Distance between the image of step i and step i + 1, in the metric of the kind.
inline Rational step_defect(const PseudoOrbitSpec& s, std::size_t i) {
  const auto img = detail::step_image(s, s.states[i]);
  const auto& nxt = s.states[i + 1];
  switch (s.kind) {
    case StateKind::Point: return abs_value(img[0] - nxt[0]);
    case StateKind::FiniteSet: return hausdorff_on_line(normalized(img), normalized(nxt));
    case StateKind::CircleSet: return detail::circle_hausdorff(img, nxt);
    case StateKind::CirclePair: return std::max(circle_distance(img[0], nxt[0]), circle_distance(img[1], nxt[1]));
    case StateKind::Tuple: {
      Rational worst = 0;
      for (std::size_t k = 0; k < img.size(); ++k) worst = std::max(worst, abs_value(img[k] - nxt[k]));
      return worst;
    }
  }
  return 0;
}

/// Empty when every defect is below delta and, for asymptotic examples, below
/// a nonincreasing schedule.
inline std::string validation_problem(const PseudoOrbitSpec& s) {
  if (s.states.empty()) return "no states";
  if (s.defects.size() + 1 != s.states.size()) return "defect table is stale";
  for (std::size_t i = 0; i < s.defects.size(); ++i) {
    if (step_defect(s, i) != s.defects[i]) return "defect mismatch at step " + std::to_string(i);
    if (!(s.defects[i] < s.params.delta)) return "defect at step " + std::to_string(i) + " is not below delta";
  }
  if (!s.asymptotic) return {};
  if (s.schedule.size() != s.defects.size()) return "schedule length mismatch";
  for (std::size_t i = 0; i < s.defects.size(); ++i) {
    if (s.defects[i] > s.schedule[i]) return "defect exceeds the schedule at step " + std::to_string(i);
    if (i && s.schedule[i] > s.schedule[i - 1]) return "schedule increases at step " + std::to_string(i);
  }
  return {};
}

/// The schedule of an asymptotic example ends strictly below where it starts.
inline bool schedule_shrinks(const PseudoOrbitSpec& s) {
  return s.asymptotic && s.schedule.size() > 1 && s.schedule.back() < s.schedule.front();
}

namespace detail {

inline void require(bool ok, const std::string& id, const std::string& constraint) {
  if (!ok) throw DomainError(id + ": parameters violate the constraint " + constraint);
}

inline void finish(PseudoOrbitSpec& s) {
  s.defects.clear();
  for (std::size_t i = 0; i + 1 < s.states.size(); ++i) s.defects.push_back(step_defect(s, i));
  const std::string bad = validation_problem(s);
  if (!bad.empty()) throw CertificateError(s.id + ": generated sequence fails validation: " + bad);
}

/// c / 2^k for the least k with c / 2^k < delta.
inline std::pair<Rational, std::size_t> small_preimage(const Rational& c, const Rational& delta) {
  Rational y = c;
  std::size_t k = 0;
  while (!(y < delta)) {
    y /= 2;
    ++k;
  }
  return {y, k};
}

inline PseudoOrbitSpec tent_f3_shadowing(const ExampleParams& p) {
  const std::string id = "tent-F3-shadowing";
  require(p.delta > 0 && p.delta < Rational(1, 12), id, "0 < delta < 1/12");
  require(p.n >= 3, id, "n >= 3");
  PseudoOrbitSpec s{id, p, StateKind::FiniteSet, tent_map(), std::nullopt, {}, {}, {}, false, {}};
  const Rational c(2, 3);
  auto [y, k] = small_preimage(c, p.delta);
  std::vector<Rational> moving{y};
  for (std::size_t i = 1; i < k; ++i) moving.push_back((*s.map)(moving.back()));
  for (std::size_t i = 0; i <= p.horizon; ++i) s.states.push_back({0, moving[i % k], c});
  s.notes = {{"c", to_string(c)}, {"y", to_string(y)}, {"k", std::to_string(k)}};
  finish(s);
  return s;
}

inline PseudoOrbitSpec tent_f3_limit(const ExampleParams& p) {
  const std::string id = "tent-F3-limit";
  require(p.delta > 0 && p.delta < Rational(1, 12), id, "0 < delta < 1/12");
  require(p.n >= 3, id, "n >= 3");
  PseudoOrbitSpec s{id, p, StateKind::FiniteSet, tent_map(), std::nullopt, {}, {}, {}, true, {}};
  const Rational c(2, 3);
  auto [y0, k] = small_preimage(c, p.delta);
  // Block m follows y_m = y0 / 2^m for k + m steps to c, then rests on {0, c}.
  Rational ym = y0;
  std::vector<std::size_t> block_of;
  for (std::size_t m = 0; s.states.size() <= p.horizon; ++m) {
    Rational x = ym;
    for (std::size_t j = 0; j < k + m && s.states.size() <= p.horizon; ++j) {
      s.states.push_back({0, x, c});
      block_of.push_back(m);
      x = (*s.map)(x);
    }
    if (s.states.size() <= p.horizon) {
      s.states.push_back({0, c});
      block_of.push_back(m);
    }
    ym /= 2;
  }
  for (std::size_t i = 0; i + 1 < s.states.size(); ++i) s.schedule.push_back(y0 / (mpz_class(1) << (block_of[i] + 1)));
  s.notes = {{"c", to_string(c)}, {"y", to_string(y0)}, {"k", std::to_string(k)}};
  finish(s);
  return s;
}

inline PseudoOrbitSpec cubic_tent_eventual(const ExampleParams& p) {
  const std::string id = "cubic-tent-hyper-eventual";
  require(p.eps > 0 && p.delta > 0 && p.delta < p.eps, id, "0 < delta < eps");
  const CubicTentSurrogate sur = cubic_tent_surrogate();
  PseudoOrbitSpec s{id, p, StateKind::FiniteSet, sur.map, std::nullopt, {}, {}, {}, false, {}};
  const PLMap& f = *s.map;
  // Pull -1/2 back toward -1 until it lies within delta of -1.
  const RationalIntervalSet left{closed(Rational(-1), Rational(0))};
  Rational y(-1, 2);
  std::size_t m = 0;
  while (!(y < Rational(-1) + p.delta)) {
    y = *f.preimage_in(y, left);
    ++m;
  }
  std::vector<Rational> climb{y};
  while (!(climb.back() > -p.delta / 2)) climb.push_back(f(climb.back()));
  const std::size_t k = climb.size() - 1;
  // Periodic tent orbit 2/(2^n+1) -> ... -> 2^n/(2^n+1) -> back.
  std::size_t per = 1;
  while (!(Rational(2) / (Rational(mpz_class(1) << per) + 1) < p.delta / 2)) ++per;
  std::vector<Rational> cycle{Rational(2) / (Rational(mpz_class(1) << per) + 1)};
  for (std::size_t j = 1; j < per; ++j) cycle.push_back(f(cycle.back()));
  const std::size_t period = k + per;
  for (std::size_t i = 0; i <= p.horizon; ++i) {
    const std::size_t j = i % period;
    if (j < k) {
      s.states.push_back({-1, climb[j], 0});
    } else {
      s.states.push_back({-1, cycle[j - k]});
    }
  }
  s.notes = {{"y", to_string(y)},
             {"m", std::to_string(m)},
             {"k", std::to_string(k)},
             {"p", to_string(cycle[0])},
             {"period", std::to_string(per)},
             {"n0", std::to_string(per - 1)},
             {"interpolation_error", to_string(sur.error_bound)},
             {"interpolation_bits", std::to_string(sur.bits)}};
  finish(s);
  return s;
}

inline void require_window(const ExampleParams& p, const std::string& id) {
  const RotationSystem r(p.alpha);
  require(p.horizon < r.period(), id, "horizon < denominator of alpha (" + std::to_string(r.period()) + ")");
}

/// x_0 = 0, y_0 = 1/2; offsets (a_i, b_i) are added after each rotation step.
template <class Offsets>
PseudoOrbitSpec rotation_drift(std::string id, const ExampleParams& p, StateKind kind, bool asymptotic,
                               Offsets&& offsets) {
  PseudoOrbitSpec s{std::move(id), p, kind, std::nullopt, RotationSystem(p.alpha), {}, {}, {}, asymptotic, {}};
  Rational x = 0, y(1, 2);
  std::optional<std::size_t> collapse;
  for (std::size_t i = 0; i <= p.horizon; ++i) {
    if (i) {
      auto [a, b] = offsets(i);
      x = mod_one((*s.rotation)(x) + a);
      y = mod_one((*s.rotation)(y) + b);
      if (asymptotic) s.schedule.push_back(std::max(a, b));
    }
    s.states.push_back({x, y});
    if (!collapse && circle_distance(x, y) <= p.delta / 6) collapse = i;
  }
  s.notes = {{"alpha", to_string(p.alpha)}, {"alpha_period", std::to_string(s.rotation->period())}};
  if (collapse) s.notes.emplace_back("collapse_step", std::to_string(*collapse));
  finish(s);
  return s;
}

inline PseudoOrbitSpec rotation_orbital(const ExampleParams& p, bool product) {
  const std::string id = product ? "rotation-product-orbital" : "rotation-hyper-orbital";
  require(p.eps > 0 && p.eps < Rational(1, 20), id, "0 < eps < 1/20");
  require(p.delta > 0 && p.delta < p.eps, id, "0 < delta < eps");
  require_window(p, id);
  const Rational a = p.delta / 2, b = p.delta / 3;
  return rotation_drift(id, p, product ? StateKind::CirclePair : StateKind::CircleSet, false,
                        [&](std::size_t) { return std::pair{a, b}; });
}

inline PseudoOrbitSpec rotation_orbital_limit(const ExampleParams& p, bool product) {
  const std::string id = product ? "rotation-product-orbital-limit" : "rotation-hyper-orbital-limit";
  require(p.delta > 0 && p.delta < 1, id, "0 < delta < 1");
  require_window(p, id);
  return rotation_drift(id, p, product ? StateKind::CirclePair : StateKind::CircleSet, true, [&](std::size_t i) {
    return std::pair{Rational(p.delta / (2 * i)), Rational(p.delta / (3 * i))};
  });
}

/// k-fold truncation of the product of ({2} u [0, 1], tent + 2 -> 1): the
/// orbit of the all-2 point, which has no preimage.
inline PseudoOrbitSpec nonsurjective_product(const ExampleParams& p) {
  const std::string id = "nonsurjective-product-h";
  require(p.n >= 1, id, "at least one factor");
  PseudoOrbitSpec s{id, p, StateKind::Tuple, tent_with_isolated_point(), std::nullopt, {}, {}, {}, false, {}};
  std::vector<Rational> pt(p.n, Rational(2));
  for (std::size_t i = 0; i <= p.horizon; ++i) {
    s.states.push_back(pt);
    for (auto& x : pt) x = (*s.map)(x);
  }
  s.notes = {{"factors", std::to_string(p.n)}, {"point_without_preimage", "all coordinates 2"}, {"onto", "false"}};
  finish(s);
  return s;
}

}  // namespace detail

inline PseudoOrbitSpec generate_example(std::string_view id, const ExampleParams& p = {}) {
  if (id == "tent-F3-shadowing") return detail::tent_f3_shadowing(p);
  if (id == "tent-F3-limit") return detail::tent_f3_limit(p);
  if (id == "cubic-tent-hyper-eventual") return detail::cubic_tent_eventual(p);
  if (id == "rotation-hyper-orbital") return detail::rotation_orbital(p, false);
  if (id == "rotation-product-orbital") return detail::rotation_orbital(p, true);
  if (id == "rotation-product-orbital-limit") return detail::rotation_orbital_limit(p, true);
  if (id == "rotation-hyper-orbital-limit") return detail::rotation_orbital_limit(p, false);
  if (id == "nonsurjective-product-h") return detail::nonsurjective_product(p);
  throw InputError("unknown example '" + std::string(id) + "'");
}

/// A genuine rotation orbit of the pair (x0, y0), for controls.
inline PseudoOrbitSpec rotation_true_orbit(const Rational& x0, const Rational& y0, const ExampleParams& p,
                                           bool product) {
  PseudoOrbitSpec s{"rotation-true-orbit", p, product ? StateKind::CirclePair : StateKind::CircleSet,
                    std::nullopt, RotationSystem(p.alpha), {}, {}, {}, false, {}};
  Rational x = mod_one(x0), y = mod_one(y0);
  for (std::size_t i = 0; i <= p.horizon; ++i) {
    s.states.push_back({x, y});
    x = (*s.rotation)(x);
    y = (*s.rotation)(y);
  }
  detail::finish(s);
  return s;
}

}  // namespace shadowlab
