#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/json_io.hpp"
#include "shadowlab/point_set.hpp"
#include "shadowlab/space.hpp"

namespace shadowlab {

/// Size limits for the exponential constructors. A breach throws BudgetError.
struct InducedCaps {
  std::size_t max_points = 4096;
  std::size_t hyperspace_base = 12;
};

// ---------------------------------------------------------------- products

struct ProductSystem {
  FiniteMetricSystem system;
  /// coords[p][k] is the k-th coordinate of product point p.
  std::vector<std::vector<PointId>> coords;
};

/// Cartesian product with the max metric and componentwise map. Points are
/// ordered lexicographically with the first factor most significant.
inline ProductSystem product_system(const std::vector<FiniteMetricSystem>& factors,
                                    const InducedCaps& caps = {}) {
  if (factors.empty()) throw DomainError("product of an empty list of systems");
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.size() != 0 && total > caps.max_points / f.size())
      throw BudgetError("product exceeds the point cap of " + std::to_string(caps.max_points));
    total *= f.size();
  }
  if (total > caps.max_points)
    throw BudgetError("product exceeds the point cap of " + std::to_string(caps.max_points));

  // Shared value table and per-factor rank translation.
  std::vector<Rational> values;
  for (const auto& f : factors)
    values.insert(values.end(), f.space().value_table().begin(), f.space().value_table().end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::vector<FiniteMetricSpace::Rank>> translate;
  for (const auto& f : factors) {
    std::vector<FiniteMetricSpace::Rank> t;
    for (const auto& v : f.space().value_table())
      t.push_back(static_cast<FiniteMetricSpace::Rank>(
          std::lower_bound(values.begin(), values.end(), v) - values.begin()));
    translate.push_back(std::move(t));
  }

  ProductSystem out;
  out.coords.reserve(total);
  std::vector<PointId> cur(factors.size(), 0);
  for (std::size_t p = 0; p < total; ++p) {
    out.coords.push_back(cur);
    for (std::size_t k = factors.size(); k-- > 0;) {
      if (++cur[k] < factors[k].size()) break;
      cur[k] = 0;
    }
  }
  std::vector<std::size_t> stride(factors.size(), 1);
  for (std::size_t k = factors.size() - 1; k-- > 0;) stride[k] = stride[k + 1] * factors[k + 1].size();
  auto index_of = [&](const std::vector<PointId>& c) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < c.size(); ++k) idx += c[k] * stride[k];
    return static_cast<PointId>(idx);
  };

  std::vector<FiniteMetricSpace::Rank> ranks(total * total, 0);
  std::vector<std::string> labels;
  std::vector<PointId> map;
  for (std::size_t p = 0; p < total; ++p) {
    const auto& a = out.coords[p];
    std::string lab = "(";
    std::vector<PointId> img(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      lab += (k ? "," : "") + factors[k].label(a[k]);
      img[k] = factors[k].f(a[k]);
    }
    labels.push_back(lab + ")");
    map.push_back(index_of(img));
    for (std::size_t q = 0; q < total; ++q) {
      const auto& b = out.coords[q];
      FiniteMetricSpace::Rank r = 0;
      for (std::size_t k = 0; k < a.size(); ++k)
        r = std::max(r, translate[k][factors[k].space().rank(a[k], b[k])]);
      ranks[p * total + q] = r;
    }
  }
  out.system = FiniteMetricSystem(FiniteMetricSpace(std::move(labels), std::move(values), std::move(ranks)),
                                  std::move(map));
  return out;
}

// ------------------------------------------------------- subset systems

/// A system whose points are nonempty subsets of a base system, with the
/// Hausdorff metric and the image map.
struct SubsetSystem {
  FiniteMetricSystem system;
  std::vector<PointSet> subsets;
  std::unordered_map<PointSet, PointId, PointSetHash> index;

  PointId index_of(const PointSet& s) const {
    auto it = index.find(s);
    if (it == index.end()) throw DomainError("subset is not a point of this induced system");
    return it->second;
  }
};

namespace detail {

inline std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

inline std::string subset_label(const FiniteMetricSystem& base, const PointSet& s) {
  std::string lab = "{";
  bool first = true;
  s.for_each([&](PointId i) {
    lab += (first ? "" : ",") + base.label(i);
    first = false;
  });
  return lab + "}";
}

/// Builds the subset system on an explicit list of distinct nonempty subsets,
/// which must be closed under the image map.
inline SubsetSystem build_subset_system(const FiniteMetricSystem& base, std::vector<PointSet> subsets) {
  std::sort(subsets.begin(), subsets.end());
  SubsetSystem out;
  const std::size_t m = subsets.size();
  const std::size_t n = base.size();
  for (std::size_t i = 0; i < m; ++i) out.index.emplace(subsets[i], static_cast<PointId>(i));

  // gap[x * m + s] = rank of the distance from base point x to subset s.
  using Rank = FiniteMetricSpace::Rank;
  std::vector<Rank> gap(n * m);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t x = 0; x < n; ++x) {
      Rank best = ~Rank{0};
      subsets[s].for_each([&](PointId y) { best = std::min(best, base.space().rank(x, y)); });
      gap[x * m + s] = best;
    }
  std::vector<std::vector<PointId>> members(m);
  for (std::size_t s = 0; s < m; ++s) members[s] = subsets[s].members();

  std::vector<Rank> ranks(m * m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      Rank r = 0;
      for (PointId x : members[a]) r = std::max(r, gap[x * m + b]);
      for (PointId y : members[b]) r = std::max(r, gap[y * m + a]);
      ranks[a * m + b] = ranks[b * m + a] = r;
    }
  const auto& table = base.space().value_table();

  std::vector<std::string> labels;
  std::vector<PointId> map;
  for (const auto& s : subsets) {
    labels.push_back(subset_label(base, s));
    map.push_back(out.index_of(base.image(s)));
  }
  out.system = FiniteMetricSystem(FiniteMetricSpace(std::move(labels), table, std::move(ranks)), std::move(map));
  out.subsets = std::move(subsets);
  return out;
}

}  // namespace detail

/// F_n(X): nonempty subsets with at most n points, ordered by bitmask value.
inline SubsetSystem symmetric_product(const FiniteMetricSystem& base, std::size_t n,
                                      const InducedCaps& caps = {}) {
  if (n < 2) throw DomainError("symmetric product needs n >= 2");
  const std::size_t size = base.size();
  const std::size_t top = std::min(n, size);
  std::size_t total = 0;
  for (std::size_t k = 1; k <= top; ++k) {
    total += detail::binomial_capped(size, k, caps.max_points);
    if (total > caps.max_points)
      throw BudgetError("symmetric product exceeds the point cap of " + std::to_string(caps.max_points));
  }
  std::vector<PointSet> subsets;
  subsets.reserve(total);
  for (std::size_t k = 1; k <= top; ++k) {
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      PointSet s(size);
      for (auto c : comb) s.set(c);
      subsets.push_back(std::move(s));
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == size - k + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return detail::build_subset_system(base, std::move(subsets));
}

/// 2^X: all nonempty subsets. Point index equals bitmask minus one.
inline SubsetSystem hyperspace_system(const FiniteMetricSystem& base, const InducedCaps& caps = {}) {
  if (base.size() > caps.hyperspace_base)
    throw BudgetError("hyperspace base has " + std::to_string(base.size()) +
                      " points, above the cap of " + std::to_string(caps.hyperspace_base));
  if (base.size() == 0) throw DomainError("hyperspace of an empty space");
  std::vector<PointSet> subsets;
  const std::uint64_t count = std::uint64_t{1} << base.size();
  for (std::uint64_t mask = 1; mask < count; ++mask) subsets.push_back(PointSet::from_mask(base.size(), mask));
  return detail::build_subset_system(base, std::move(subsets));
}

// ------------------------------------------------------------ factor maps

struct FactorMapSpec {
  FiniteMetricSystem domain;
  FiniteMetricSystem codomain;
  std::vector<PointId> phi;
};

/// Empty iff phi is surjective and phi o f = g o phi.
inline std::vector<std::string> validate_factor_map(const FactorMapSpec& spec) {
  if (spec.phi.size() != spec.domain.size())
    throw StructuralError("phi has " + std::to_string(spec.phi.size()) + " entries for a domain of " +
                          std::to_string(spec.domain.size()) + " points");
  for (std::size_t i = 0; i < spec.phi.size(); ++i)
    if (spec.phi[i] >= spec.codomain.size())
      throw StructuralError("phi[" + std::to_string(i) + "] is out of range");
  std::vector<std::string> out;
  PointSet hit(spec.codomain.size());
  for (auto y : spec.phi) hit.set(y);
  for (std::size_t y = 0; y < spec.codomain.size(); ++y)
    if (!hit.test(y)) out.push_back("codomain point " + spec.codomain.label(y) + " has no preimage");
  for (std::size_t i = 0; i < spec.domain.size(); ++i) {
    const PointId lhs = spec.phi[spec.domain.f(i)];
    const PointId rhs = spec.codomain.f(spec.phi[i]);
    if (lhs != rhs)
      out.push_back("phi(f(" + spec.domain.label(i) + ")) = " + spec.codomain.label(lhs) + " but g(phi(" +
                    spec.domain.label(i) + ")) = " + spec.codomain.label(rhs));
  }
  return out;
}

/// Factor-map document: {"domain": path-or-object, "codomain": path-or-object,
/// "phi": [indices]}. Relative paths resolve against `base_dir`.
inline FactorMapSpec factor_map_from_json(const Json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw InputError("factor-map document must be a JSON object");
  auto side = [&](const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing \"") + key + "\"");
    const Json& v = j[key];
    if (v.is_string()) {
      std::filesystem::path p(v.get<std::string>());
      if (p.is_relative()) p = base_dir / p;
      return load_system(p.string());
    }
    return system_from_json(v);
  };
  FactorMapSpec spec{side("domain"), side("codomain"), {}};
  if (!j.contains("phi")) throw InputError("missing \"phi\" array");
  spec.phi = detail::index_array(j["phi"], "\"phi\"");
  return spec;
}

/// Projection of a product onto one factor.
inline FactorMapSpec projection_spec(const std::vector<FiniteMetricSystem>& factors, std::size_t k,
                                     const InducedCaps& caps = {}) {
  ProductSystem prod = product_system(factors, caps);
  std::vector<PointId> phi;
  for (const auto& c : prod.coords) phi.push_back(c[k]);
  return FactorMapSpec{std::move(prod.system), factors.at(k), std::move(phi)};
}

// ------------------------------------------------------- inverse towers

/// Linear tower X_0 <- X_1 <- ... <- X_k; bonds[j] maps X_{j+1} into X_j.
struct InverseTower {
  std::vector<FiniteMetricSystem> systems;
  std::vector<std::vector<PointId>> bonds;
};

inline std::vector<std::string> validate_tower(const InverseTower& t) {
  if (t.systems.empty()) throw StructuralError("tower has no levels");
  if (t.bonds.size() + 1 != t.systems.size())
    throw StructuralError("tower with " + std::to_string(t.systems.size()) + " levels needs " +
                          std::to_string(t.systems.size() - 1) + " bonds");
  std::vector<std::string> out;
  for (std::size_t j = 0; j < t.bonds.size(); ++j) {
    const auto& b = t.bonds[j];
    const auto& upper = t.systems[j + 1];
    const auto& lower = t.systems[j];
    if (b.size() != upper.size())
      throw StructuralError("bond " + std::to_string(j) + " has the wrong length");
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] >= lower.size()) throw StructuralError("bond " + std::to_string(j) + " entry out of range");
    }
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[upper.f(i)] != lower.f(b[i]))
        out.push_back("bond " + std::to_string(j) + " does not commute at " + upper.label(i));
  }
  return out;
}

struct TowerLimit {
  /// True when no thread exists; `system` is then the empty system.
  bool empty = false;
  FiniteMetricSystem system;
  /// threads[p][j] is the level-j coordinate of limit point p.
  std::vector<std::vector<PointId>> threads;
};

/// Threads of a valid tower under the weighted sup metric. On a linear tower a
/// thread is fixed by its top coordinate.
inline TowerLimit tower_limit(const InverseTower& tower, std::vector<Rational> weights = {}) {
  if (!validate_tower(tower).empty()) throw DomainError("tower bonds are not semiconjugacies");
  const std::size_t levels = tower.systems.size();
  if (weights.empty()) weights.assign(levels, Rational(1));
  if (weights.size() != levels) throw DomainError("one weight per tower level is required");
  for (const auto& w : weights)
    if (w <= 0) throw DomainError("tower weights must be positive");

  TowerLimit out;
  const auto& top = tower.systems.back();
  for (PointId x = 0; x < top.size(); ++x) {
    std::vector<PointId> th(levels);
    th[levels - 1] = x;
    for (std::size_t j = levels - 1; j-- > 0;) th[j] = tower.bonds[j][th[j + 1]];
    out.threads.push_back(std::move(th));
  }
  out.empty = out.threads.empty();
  const std::size_t m = out.threads.size();
  std::vector<std::string> labels;
  std::vector<Rational> flat(m * m);
  std::vector<PointId> map;
  for (std::size_t p = 0; p < m; ++p) {
    std::string lab = "(";
    for (std::size_t j = 0; j < levels; ++j) lab += (j ? "," : "") + tower.systems[j].label(out.threads[p][j]);
    labels.push_back(lab + ")");
    map.push_back(tower.systems.back().f(out.threads[p].back()));
    for (std::size_t q = 0; q < m; ++q) {
      Rational r = 0;
      for (std::size_t j = 0; j < levels; ++j) {
        Rational v = weights[j] * tower.systems[j].d(out.threads[p][j], out.threads[q][j]);
        if (v > r) r = v;
      }
      flat[p * m + q] = r;
    }
  }
  out.system = FiniteMetricSystem(FiniteMetricSpace(std::move(labels), flat), std::move(map));
  return out;
}

struct MittagLefflerReport {
  std::vector<bool> holds;
  /// Least level from which the composite images into level j stop shrinking.
  std::vector<std::size_t> stabilization_level;
};

/// On a finite tower the composite images into a level form a decreasing chain
/// indexed by the tower, so they stabilize at the latest at the top level.
inline MittagLefflerReport check_mittag_leffler(const InverseTower& tower) {
  validate_tower(tower);
  const std::size_t levels = tower.systems.size();
  MittagLefflerReport rep;
  for (std::size_t lam = 0; lam < levels; ++lam) {
    // images[eta - lam] = g_lam^eta(X_eta)
    std::vector<PointSet> images;
    for (std::size_t eta = lam; eta < levels; ++eta) {
      PointSet img = PointSet::full(tower.systems[eta].size());
      for (std::size_t j = eta; j > lam; --j) {
        PointSet down(tower.systems[j - 1].size());
        img.for_each([&](PointId x) { down.set(tower.bonds[j - 1][x]); });
        img = std::move(down);
      }
      images.push_back(std::move(img));
    }
    std::size_t gamma = levels - 1;
    while (gamma > lam && images[gamma - 1 - lam] == images.back()) --gamma;
    bool ok = false;
    for (std::size_t g = lam; g < levels && !ok; ++g) {
      bool stable = true;
      for (std::size_t eta = g; eta < levels; ++eta) stable = stable && images[eta - lam] == images[g - lam];
      ok = stable;
    }
    rep.holds.push_back(ok);
    rep.stabilization_level.push_back(gamma);
  }
  return rep;
}

/// Constant tower (X, f) <- (X, f) <- ... with bond f, `levels` levels deep.
inline InverseTower standard_tower(const FiniteMetricSystem& sys, std::size_t levels) {
  if (levels == 0) throw DomainError("a tower needs at least one level");
  InverseTower t;
  t.systems.assign(levels, sys);
  t.bonds.assign(levels - 1, sys.map());
  return t;
}

inline TowerLimit inverse_limit(const FiniteMetricSystem& sys, std::size_t levels,
                                std::vector<Rational> weights = {}) {
  return tower_limit(standard_tower(sys, levels), std::move(weights));
}

}  // namespace shadowlab
