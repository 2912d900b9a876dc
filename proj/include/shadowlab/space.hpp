#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/point_set.hpp"
#include "shadowlab/rational.hpp"

namespace shadowlab {

/// Finite point set with an exact rational distance matrix. Distances are
/// stored as ranks into a sorted table of distinct values, so comparisons in
/// the hot loops are integer comparisons.
class FiniteMetricSpace {
 public:
  using Rank = std::uint32_t;

  FiniteMetricSpace() = default;

  FiniteMetricSpace(std::vector<std::string> labels, const std::vector<std::vector<Rational>>& dist)
      : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (dist.size() != n)
      throw StructuralError("metric has " + std::to_string(dist.size()) + " rows but there are " +
                            std::to_string(n) + " points");
    std::vector<Rational> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i].size() != n)
        throw StructuralError("metric row " + std::to_string(i) + " has " +
                              std::to_string(dist[i].size()) + " entries, expected " +
                              std::to_string(n));
      for (const auto& v : dist[i]) flat.push_back(v);
    }
    build_from_flat(flat);
  }

  /// Flat row-major constructor.
  FiniteMetricSpace(std::vector<std::string> labels, const std::vector<Rational>& flat)
      : labels_(std::move(labels)) {
    if (flat.size() != labels_.size() * labels_.size())
      throw StructuralError("flat metric size does not match point count");
    build_from_flat(flat);
  }

  /// Rank-matrix constructor used by the induced-system builders. `values`
  /// must be sorted and distinct; every rank must index into it.
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<Rational> values,
                    std::vector<Rank> ranks)
      : labels_(std::move(labels)), values_(std::move(values)), ranks_(std::move(ranks)) {
    if (ranks_.size() != labels_.size() * labels_.size())
      throw StructuralError("rank matrix size does not match point count");
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Rational& d(std::size_t i, std::size_t j) const { return values_[ranks_[i * size() + j]]; }
  Rank rank(std::size_t i, std::size_t j) const { return ranks_[i * size() + j]; }
  /// Sorted distinct entries of the matrix (including 0 when present).
  const std::vector<Rational>& value_table() const { return values_; }

  /// Number of table values strictly below r; d(i,j) < r iff rank(i,j) < cut.
  Rank rank_cut(const Rational& r) const {
    return static_cast<Rank>(std::lower_bound(values_.begin(), values_.end(), r) - values_.begin());
  }

  /// Open ball {j : d(i,j) < r}.
  PointSet ball(std::size_t i, const Rational& r) const { return ball_by_cut(i, rank_cut(r)); }
  PointSet ball_by_cut(std::size_t i, Rank cut) const {
    PointSet b(size());
    const Rank* row = &ranks_[i * size()];
    for (std::size_t j = 0; j < size(); ++j)
      if (row[j] < cut) b.set(j);
    return b;
  }
  /// Open neighbourhood of a set: union of balls.
  PointSet ball(const PointSet& s, const Rational& r) const {
    const Rank cut = rank_cut(r);
    PointSet b(size());
    s.for_each([&](PointId i) { b |= ball_by_cut(i, cut); });
    return b;
  }
  /// All open balls of radius r, indexed by centre.
  std::vector<PointSet> balls(const Rational& r) const {
    const Rank cut = rank_cut(r);
    std::vector<PointSet> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(ball_by_cut(i, cut));
    return out;
  }

  std::vector<Rational> distinct_distances() const {
    std::vector<bool> used(values_.size(), false);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) used[rank(i, j)] = true;
    std::vector<Rational> v;
    for (std::size_t k = 0; k < values_.size(); ++k)
      if (used[k]) v.push_back(values_[k]);
    return v;
  }

 private:
  void build_from_flat(const std::vector<Rational>& flat) {
    values_ = flat;
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    ranks_.resize(flat.size());
    for (std::size_t k = 0; k < flat.size(); ++k) ranks_[k] = rank_cut(flat[k]);
  }

  std::vector<std::string> labels_;
  std::vector<Rational> values_;
  std::vector<Rank> ranks_;
};

/// A finite space together with a self-map given as an index array.
class FiniteMetricSystem {
 public:
  FiniteMetricSystem() = default;
  FiniteMetricSystem(FiniteMetricSpace space, std::vector<PointId> map)
      : space_(std::move(space)), map_(std::move(map)) {
    if (map_.size() != space_.size())
      throw StructuralError("map has " + std::to_string(map_.size()) + " entries for " +
                            std::to_string(space_.size()) + " points");
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] >= space_.size())
        throw StructuralError("map[" + std::to_string(i) + "] = " + std::to_string(map_[i]) +
                              " is out of range");
  }

  const FiniteMetricSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  PointId f(std::size_t i) const { return map_[i]; }
  const std::vector<PointId>& map() const { return map_; }
  const Rational& d(std::size_t i, std::size_t j) const { return space_.d(i, j); }
  const std::string& label(std::size_t i) const { return space_.label(i); }

  PointId iterate(PointId x, std::size_t k) const {
    for (std::size_t t = 0; t < k; ++t) x = map_[x];
    return x;
  }

  PointSet image(const PointSet& s) const {
    PointSet out(size());
    s.for_each([&](PointId i) { out.set(map_[i]); });
    return out;
  }

  bool is_surjective() const {
    return image(PointSet::full(size())).count() == size();
  }

 private:
  FiniteMetricSpace space_;
  std::vector<PointId> map_;
};

/// An (eps, delta) pair of positive rationals.
struct ThresholdPair {
  Rational eps;
  Rational delta;

  static ThresholdPair make(Rational eps, Rational delta) {
    if (eps <= 0 || delta <= 0) throw DomainError("thresholds must be positive");
    return ThresholdPair{std::move(eps), std::move(delta)};
  }
};

struct MetricViolation {
  enum class Kind { NonzeroDiagonal, NonPositive, Asymmetric, Triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  std::string message;
};

/// Lists every failed metric axiom. Triangle violations are reported once per
/// unordered endpoint pair {i,k} with middle point j.
inline std::vector<MetricViolation> validate_space(const FiniteMetricSpace& space) {
  std::vector<MetricViolation> out;
  const std::size_t n = space.size();
  auto name = [&](std::size_t i) { return space.label(i); };
  for (std::size_t i = 0; i < n; ++i) {
    if (space.d(i, i) != 0)
      out.push_back({MetricViolation::Kind::NonzeroDiagonal, i, i, i,
                     "d(" + name(i) + "," + name(i) + ") = " + to_string(space.d(i, i)) + " != 0"});
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < j && space.d(i, j) <= 0)
        out.push_back({MetricViolation::Kind::NonPositive, i, j, j,
                       "d(" + name(i) + "," + name(j) + ") = " + to_string(space.d(i, j)) +
                           " is not positive"});
      if (i < j && space.d(i, j) != space.d(j, i))
        out.push_back({MetricViolation::Kind::Asymmetric, i, j, j,
                       "d(" + name(i) + "," + name(j) + ") != d(" + name(j) + "," + name(i) + ")"});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (space.d(i, k) > space.d(i, j) + space.d(j, k))
          out.push_back({MetricViolation::Kind::Triangle, i, j, k,
                         "d(" + name(i) + "," + name(k) + ") > d(" + name(i) + "," + name(j) +
                             ") + d(" + name(j) + "," + name(k) + ")"});
      }
  return out;
}

/// Hausdorff gap between nonempty subsets as a rank into the space's value
/// table (max of the two directed gaps).
inline FiniteMetricSpace::Rank hausdorff_rank(const PointSet& a, const PointSet& b,
                                              const FiniteMetricSpace& space) {
  if (a.empty() || b.empty()) throw DomainError("Hausdorff distance of an empty set");
  using Rank = FiniteMetricSpace::Rank;
  auto directed = [&](const PointSet& from, const PointSet& to) {
    Rank worst = 0;
    from.for_each([&](PointId x) {
      Rank best = ~Rank{0};
      to.for_each([&](PointId y) { best = std::min(best, space.rank(x, y)); });
      worst = std::max(worst, best);
    });
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

inline Rational hausdorff_distance(const PointSet& a, const PointSet& b, const FiniteMetricSpace& space) {
  return space.value_table()[hausdorff_rank(a, b, space)];
}

/// Decision-relevant thresholds: distinct distances, consecutive midpoints,
/// half the minimum, and the midpoint between the maximum and twice the maximum.
struct ThresholdGrid {
  std::vector<Rational> values;
};

inline ThresholdGrid threshold_grid(const FiniteMetricSpace& space) {
  std::vector<Rational> dists = space.distinct_distances();
  ThresholdGrid g;
  if (dists.empty()) {
    g.values.push_back(Rational(1));
    return g;
  }
  g.values.push_back(dists.front() / 2);
  for (std::size_t i = 0; i < dists.size(); ++i) {
    g.values.push_back(dists[i]);
    Rational next = i + 1 < dists.size() ? dists[i + 1] : Rational(2 * dists.back());
    g.values.push_back((dists[i] + next) / 2);
  }
  std::sort(g.values.begin(), g.values.end());
  g.values.erase(std::unique(g.values.begin(), g.values.end()), g.values.end());
  return g;
}

/// Union of two grids, sorted and deduplicated.
inline ThresholdGrid merge_grids(const ThresholdGrid& a, const ThresholdGrid& b) {
  ThresholdGrid g;
  g.values = a.values;
  g.values.insert(g.values.end(), b.values.begin(), b.values.end());
  std::sort(g.values.begin(), g.values.end());
  g.values.erase(std::unique(g.values.begin(), g.values.end()), g.values.end());
  return g;
}

inline PointSet orbit_set(const FiniteMetricSystem& sys, PointId start) {
  PointSet seen(sys.size());
  PointId x = start;
  while (!seen.test(x)) {
    seen.set(x);
    x = sys.f(x);
  }
  return seen;
}

/// The periodic cycle the orbit of `start` falls into.
inline PointSet omega_limit_set(const FiniteMetricSystem& sys, PointId start) {
  PointSet seen(sys.size());
  PointId x = start;
  while (!seen.test(x)) {
    seen.set(x);
    x = sys.f(x);
  }
  PointSet cycle(sys.size());
  while (!cycle.test(x)) {
    cycle.set(x);
    x = sys.f(x);
  }
  return cycle;
}

/// All periodic cycles of the map, each once, ordered by bitmask.
inline std::vector<PointSet> periodic_cycles(const FiniteMetricSystem& sys) {
  std::vector<PointSet> out;
  for (PointId x = 0; x < sys.size(); ++x) {
    PointSet c = omega_limit_set(sys, x);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace shadowlab
