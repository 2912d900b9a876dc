#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "shadowlab/deciders/verdict.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/space.hpp"

namespace shadowlab {

/// Transient length and period of the orbit of x.
struct OrbitShape {
  std::size_t transient = 0;
  std::size_t period = 1;
};

inline OrbitShape orbit_shape(const FiniteMetricSystem& sys, PointId x) {
  std::vector<std::size_t> first(sys.size(), static_cast<std::size_t>(-1));
  PointId y = x;
  for (std::size_t i = 0;; ++i, y = sys.f(y)) {
    if (first[y] != static_cast<std::size_t>(-1)) return {first[y], i - first[y]};
    first[y] = i;
  }
}

/// For a walk that follows the true orbit of `tail_start` from index `m` on,
/// a point z with f^i(z) = x_i for all large i. With (t, p) the shape of the
/// tail's orbit, z = f^j(tail_start) where j >= t and j + m = 0 mod p.
inline PointId limit_shadow_point(const FiniteMetricSystem& sys, PointId tail_start, std::size_t m) {
  const OrbitShape sh = orbit_shape(sys, tail_start);
  std::size_t j = sh.transient;
  while ((j + m) % sh.period != 0) ++j;
  return sys.iterate(tail_start, j);
}

inline constexpr char kLimitRule[] =
    "tail x_m, x_m+1 = f(x_m), ...: z = f^j(x_m) with j past the transient of x_m and j + m divisible by its period";

/// Limit shadowing holds on every finite system: asymptotic pseudo-orbits are
/// eventually exact, and the rule above matches every exact tail.
inline Verdict decide_limit_shadowing(const FiniteMetricSystem& sys) {
  return Verdict::pass(RuleWitness{kLimitRule}, sys.size());
}

inline constexpr std::size_t kIctCap = 16;

/// Sets A in which any two points (a point and itself included) are joined by
/// an exact chain of positive length staying in A. Brute force over subsets.
inline std::vector<PointSet> enumerate_ict_sets(const FiniteMetricSystem& sys, std::size_t cap = kIctCap) {
  const std::size_t n = sys.size();
  if (n > cap)
    throw BudgetError("ICT enumeration needs at most " + std::to_string(cap) + " points, got " + std::to_string(n));
  std::vector<PointSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const PointSet a = PointSet::from_mask(n, mask);
    bool ok = true;
    a.for_each([&](PointId x) {
      if (!ok) return;
      // The chain from x cannot leave A, and must reach all of A.
      PointSet path(n);
      PointId y = sys.f(x);
      while (ok && !path.test(y)) {
        if (!a.test(y)) ok = false;
        path.set(y);
        y = sys.f(y);
      }
      if (ok && !a.subset_of(path)) ok = false;
    });
    if (ok) out.push_back(a);
  }
  return out;
}

/// {omega(x) : x in X}, deduplicated and ordered by bitmask.
inline std::vector<PointSet> omega_family(const FiniteMetricSystem& sys) {
  std::vector<PointSet> out;
  for (PointId x = 0; x < sys.size(); ++x) out.push_back(omega_limit_set(sys, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Orbital limit shadowing holds on every finite system. The first certificate
/// is the limit rule (equal tails have equal omega-limits); the second checks
/// that the omega-limit sets are exactly the ICT sets, when the brute force fits.
inline Verdict decide_orbital_limit_shadowing(const FiniteMetricSystem& sys, std::size_t ict_cap = kIctCap) {
  std::string note;
  if (sys.size() <= ict_cap) {
    if (omega_family(sys) != enumerate_ict_sets(sys, ict_cap))
      throw CertificateError("omega-limit sets differ from ICT sets");
    note = "omega_f = ICT checked";
  } else {
    note = "ICT check skipped above " + std::to_string(ict_cap) + " points";
  }
  return Verdict::pass(RuleWitness{kLimitRule}, sys.size(), note);
}

}  // namespace shadowlab
