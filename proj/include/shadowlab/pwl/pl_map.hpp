#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/pwl/interval_set.hpp"

namespace shadowlab {

/// Continuous piecewise-linear self-map of [lo, hi], optionally extended by
/// isolated points outside the interval with prescribed images.
class PLMap {
 public:
  struct Piece {
    Rational slope;
    Rational intercept;
    Rational at(const Rational& x) const { return slope * x + intercept; }
  };

  /// breakpoints b_0 < ... < b_m span [b_0, b_m]; piece j covers [b_j, b_{j+1}].
  PLMap(std::vector<Rational> breakpoints, std::vector<Piece> pieces,
        std::vector<std::pair<Rational, Rational>> isolated = {})
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), isolated_(std::move(isolated)) {
    if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
      throw StructuralError("a PL map needs m+1 breakpoints for m pieces");
    for (std::size_t j = 0; j + 1 < breaks_.size(); ++j)
      if (!(breaks_[j] < breaks_[j + 1])) throw StructuralError("breakpoints must increase");
    for (std::size_t j = 1; j + 1 < breaks_.size(); ++j)
      if (pieces_[j - 1].at(breaks_[j]) != pieces_[j].at(breaks_[j]))
        throw StructuralError("PL map is discontinuous at " + to_string(breaks_[j]));
    std::sort(isolated_.begin(), isolated_.end());
    for (const auto& [x, fx] : isolated_)
      if (x >= lo() && x <= hi()) throw StructuralError("isolated point " + to_string(x) + " lies in the interval");
    domain_ = RationalIntervalSet{closed(lo(), hi())};
    for (const auto& [x, fx] : isolated_) domain_ = domain_ | RationalIntervalSet::point(x);
    for (const auto& [x, fx] : isolated_)
      if (!domain_.contains(fx)) throw StructuralError("image of " + to_string(x) + " leaves the domain");
    for (std::size_t j = 0; j < pieces_.size(); ++j)
      for (const auto& b : {breaks_[j], breaks_[j + 1]})
        if (!domain_.contains(pieces_[j].at(b)) || !(pieces_[j].at(b) >= lo() && pieces_[j].at(b) <= hi()))
          throw StructuralError("PL map leaves its interval at " + to_string(b));
  }

  /// Interpolates the values at the given breakpoints.
  static PLMap interpolate(std::vector<Rational> xs, const std::vector<Rational>& ys,
                           std::vector<std::pair<Rational, Rational>> isolated = {}) {
    if (xs.size() != ys.size()) throw StructuralError("interpolation needs one value per breakpoint");
    std::vector<Piece> pieces;
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
      Rational s = (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j]);
      Rational c = ys[j] - s * xs[j];
      pieces.push_back({std::move(s), std::move(c)});
    }
    return PLMap(std::move(xs), std::move(pieces), std::move(isolated));
  }

  const Rational& lo() const { return breaks_.front(); }
  const Rational& hi() const { return breaks_.back(); }
  const RationalIntervalSet& domain() const { return domain_; }
  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Largest |slope|.
  Rational lipschitz() const {
    Rational best = 0;
    for (const auto& p : pieces_) best = std::max(best, abs_value(p.slope));
    return best;
  }

  Rational operator()(const Rational& x) const {
    if (auto iso = isolated_image(x)) return *iso;
    if (x < lo() || x > hi()) throw DomainError("point " + to_string(x) + " is outside the domain");
    return pieces_[piece_of(x)].at(x);
  }

  /// Exact image of a subset of the domain.
  RationalIntervalSet image(const RationalIntervalSet& s) const {
    if (!s.subset_of(domain_)) throw DomainError("set " + s.to_string() + " escapes the domain");
    std::vector<Interval> out;
    for (const auto& [x, fx] : isolated_)
      if (s.contains(x)) out.push_back(point_interval(fx));
    const RationalIntervalSet core = s & RationalIntervalSet{closed(lo(), hi())};
    for (const auto& iv : core.parts()) {
      std::size_t j = piece_of(iv.lo);
      for (; j < pieces_.size() && breaks_[j] <= iv.hi; ++j) {
        const Interval part = clip(iv, j);
        if (part.empty()) continue;
        const Piece& p = pieces_[j];
        Rational a = p.at(part.lo), b = p.at(part.hi);
        if (p.slope > 0) {
          out.push_back({std::move(a), std::move(b), part.lo_closed, part.hi_closed});
        } else if (p.slope < 0) {
          out.push_back({std::move(b), std::move(a), part.hi_closed, part.lo_closed});
        } else {
          out.push_back(point_interval(a));
        }
      }
    }
    return RationalIntervalSet(std::move(out));
  }

  /// Some z in s with f(z) = y, if any.
  std::optional<Rational> preimage_in(const Rational& y, const RationalIntervalSet& s) const {
    for (const auto& [x, fx] : isolated_)
      if (fx == y && s.contains(x)) return x;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      const Piece& p = pieces_[j];
      const RationalIntervalSet cell = s & RationalIntervalSet{closed(breaks_[j], breaks_[j + 1])};
      if (cell.empty()) continue;
      if (p.slope == 0) {
        if (p.intercept == y) return cell.sample();
        continue;
      }
      Rational x = (y - p.intercept) / p.slope;
      if (cell.contains(x)) return x;
    }
    return std::nullopt;
  }

 private:
  std::optional<Rational> isolated_image(const Rational& x) const {
    for (const auto& [p, fp] : isolated_)
      if (p == x) return fp;
    return std::nullopt;
  }

  std::size_t piece_of(const Rational& x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t j = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return std::min(j, pieces_.size() - 1);
  }

  Interval clip(const Interval& iv, std::size_t j) const {
    Interval c = iv;
    if (breaks_[j] > c.lo) c.lo = breaks_[j], c.lo_closed = true;
    if (breaks_[j + 1] < c.hi) c.hi = breaks_[j + 1], c.hi_closed = true;
    return c;
  }

  std::vector<Rational> breaks_;
  std::vector<Piece> pieces_;
  std::vector<std::pair<Rational, Rational>> isolated_;
  RationalIntervalSet domain_;
};

/// 2x on [0, 1/2], 2(1 - x) on [1/2, 1].
inline PLMap tent_map() {
  return PLMap({Rational(0), Rational(1, 2), Rational(1)}, {{Rational(2), Rational(0)}, {Rational(-2), Rational(2)}});
}

/// The tent map on [0, 1] plus the isolated point 2, sent to 1.
inline PLMap tent_with_isolated_point() {
  return PLMap({Rational(0), Rational(1, 2), Rational(1)}, {{Rational(2), Rational(0)}, {Rational(-2), Rational(2)}},
               {{Rational(2), Rational(1)}});
}

/// x^3 on [-1, 0] interpolated at spacing 2^-bits, tent on [0, 1].
struct CubicTentSurrogate {
  PLMap map;
  /// Sup distance to the true cubic on [-1, 0]: h^2/8 * max|6x| = 3h^2/4.
  Rational error_bound;
  unsigned bits = 0;
};

inline CubicTentSurrogate cubic_tent_surrogate(unsigned bits = 12) {
  const mpz_class steps = mpz_class(1) << bits;
  const Rational h(mpz_class(1), steps);
  std::vector<Rational> xs, ys;
  const unsigned long count = steps.get_ui();
  for (unsigned long j = 0; j <= count; ++j) {
    Rational x = Rational(-1) + h * j;
    xs.push_back(x);
    ys.push_back(x * x * x);
  }
  xs.push_back(Rational(1, 2));
  ys.push_back(Rational(1));
  xs.push_back(Rational(1));
  ys.push_back(Rational(0));
  return {PLMap::interpolate(std::move(xs), ys), Rational(3) * h * h / 4, bits};
}

}  // namespace shadowlab
