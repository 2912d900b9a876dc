#pragma once

#include <vector>

#include "shadowlab/induced.hpp"
#include "shadowlab/random_system.hpp"

namespace shadowlab {

/// Every factor map between systems on at most `max_points` points drawn
/// from both metric families, the codomain no larger than the domain.
inline std::vector<FactorMapSpec> enumerate_factor_maps(std::size_t max_points) {
  std::vector<FiniteMetricSystem> systems;
  for (std::size_t n = 1; n <= max_points; ++n)
    for (auto fam : {MetricFamily::Line, MetricFamily::Discrete})
      for (auto& s : all_systems(n, fam)) systems.push_back(std::move(s));
  std::vector<FactorMapSpec> out;
  for (const auto& x : systems)
    for (const auto& y : systems) {
      if (y.size() > x.size()) continue;
      std::vector<PointId> phi(x.size(), 0);
      while (true) {
        FactorMapSpec spec{x, y, phi};
        if (validate_factor_map(spec).empty()) out.push_back(std::move(spec));
        std::size_t k = phi.size();
        while (k > 0 && ++phi[k - 1] == y.size()) phi[--k] = 0;
        if (k == 0) break;
      }
    }
  return out;
}

}  // namespace shadowlab
