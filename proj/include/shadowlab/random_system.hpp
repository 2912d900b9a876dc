#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shadowlab/space.hpp"

namespace shadowlab {

enum class MetricFamily { Line, Discrete };

inline FiniteMetricSpace line_space(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Rational> flat;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      flat.emplace_back(static_cast<long>(i > j ? i - j : j - i));
  return FiniteMetricSpace(std::move(labels), std::move(flat));
}

inline FiniteMetricSpace discrete_space(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Rational> flat;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat.emplace_back(i == j ? 0 : 1);
  return FiniteMetricSpace(std::move(labels), std::move(flat));
}

inline FiniteMetricSpace make_space(MetricFamily fam, std::size_t n) {
  return fam == MetricFamily::Line ? line_space(n) : discrete_space(n);
}

/// Uniform random self-map on n points.
inline FiniteMetricSystem random_system(std::mt19937_64& rng, std::size_t n, MetricFamily fam) {
  std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(n - 1));
  std::vector<PointId> map(n);
  for (auto& m : map) m = pick(rng);
  return FiniteMetricSystem(make_space(fam, n), std::move(map));
}

/// Every self-map on n points, in lexicographic order of the map array.
inline std::vector<FiniteMetricSystem> all_systems(std::size_t n, MetricFamily fam) {
  std::vector<FiniteMetricSystem> out;
  std::vector<PointId> map(n, 0);
  while (true) {
    out.emplace_back(make_space(fam, n), map);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++map[k] < n) break;
      map[k] = 0;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace shadowlab
