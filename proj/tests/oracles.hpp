#pragma once

// Small independent references used by the tests: naive enumeration of every
// walk, with no state merging of any kind.

#include <functional>
#include <string>
#include <vector>

#include "shadowlab/rational.hpp"
#include "shadowlab/space.hpp"

namespace testing_support {

using shadowlab::FiniteMetricSpace;
using shadowlab::FiniteMetricSystem;
using shadowlab::PointId;
using shadowlab::Rational;

inline FiniteMetricSpace space_of(std::vector<std::vector<Rational>> rows) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back(std::string(1, char('a' + i)));
  return FiniteMetricSpace(labels, rows);
}

/// n points with every distance 1.
inline FiniteMetricSpace discrete(std::size_t n) {
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 0;
  return space_of(rows);
}

/// Points 0..n-1 on a line.
inline FiniteMetricSpace line(std::size_t n) {
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = Rational(i > j ? i - j : j - i);
  return space_of(rows);
}

inline FiniteMetricSystem system_of(FiniteMetricSpace sp, std::vector<PointId> map) {
  return FiniteMetricSystem(std::move(sp), std::move(map));
}

/// Calls visit(walk) for every delta-walk with exactly `len` points.
inline void for_each_walk(const FiniteMetricSystem& sys, const Rational& delta, std::size_t len,
                          const std::function<void(const std::vector<PointId>&)>& visit) {
  std::vector<PointId> w;
  std::function<void()> rec = [&] {
    if (w.size() == len) {
      visit(w);
      return;
    }
    for (PointId j = 0; j < sys.size(); ++j)
      if (w.empty() || sys.d(sys.f(w.back()), j) < delta) {
        w.push_back(j);
        rec();
        w.pop_back();
      }
  };
  rec();
}

inline bool eps_shadows(const FiniteMetricSystem& sys, PointId z, const std::vector<PointId>& w, const Rational& eps) {
  for (PointId x : w) {
    if (!(sys.d(z, x) < eps)) return false;
    z = sys.f(z);
  }
  return true;
}

/// Every delta-walk with at most `len` points is eps-shadowed.
inline bool naive_shadowing(const FiniteMetricSystem& sys, const Rational& eps, const Rational& delta,
                            std::size_t len) {
  bool ok = true;
  for (std::size_t l = 1; l <= len && ok; ++l)
    for_each_walk(sys, delta, l, [&](const std::vector<PointId>& w) {
      bool any = false;
      for (PointId z = 0; z < sys.size() && !any; ++z) any = eps_shadows(sys, z, w, eps);
      ok = ok && any;
    });
  return ok;
}

/// Every finite delta-walk with at most `len` points is h-shadowed.
inline bool naive_h_shadowing(const FiniteMetricSystem& sys, const Rational& eps, const Rational& delta,
                              std::size_t len) {
  bool ok = true;
  for (std::size_t l = 1; l <= len && ok; ++l)
    for_each_walk(sys, delta, l, [&](const std::vector<PointId>& w) {
      std::vector<PointId> head(w.begin(), w.end() - 1);
      bool any = false;
      for (PointId y = 0; y < sys.size() && !any; ++y)
        any = eps_shadows(sys, y, head, eps) && sys.iterate(y, w.size() - 1) == w.back();
      ok = ok && any;
    });
  return ok;
}

}  // namespace testing_support
