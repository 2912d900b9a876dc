#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/rational.hpp"

namespace shadowlab {

/// One interval with rational endpoints; lo == hi is a point and must be
/// closed on both sides.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Rational& x) const {
    return (lo < x || (lo_closed && lo == x)) && (x < hi || (hi_closed && hi == x));
  }
  bool is_point() const { return lo == hi && !empty(); }
  /// Some point of the interior, or the point itself.
  Rational sample() const { return is_point() ? lo : Rational((lo + hi) / 2); }
  bool operator==(const Interval&) const = default;
};

inline Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
inline Interval open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
inline Interval point_interval(const Rational& x) { return {x, x, true, true}; }

/// Finite union of intervals, kept sorted, disjoint and merged.
class RationalIntervalSet {
 public:
  RationalIntervalSet() = default;
  explicit RationalIntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { canonicalize(); }
  RationalIntervalSet(std::initializer_list<Interval> parts) : parts_(parts) { canonicalize(); }

  static RationalIntervalSet point(const Rational& x) { return RationalIntervalSet{point_interval(x)}; }
  /// Open ball of radius r around x on the real line.
  static RationalIntervalSet ball(const Rational& x, const Rational& r) {
    return RationalIntervalSet{open(x - r, x + r)};
  }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(x);
  }
  Rational sample() const {
    if (parts_.empty()) throw DomainError("sample of an empty set");
    return parts_.front().sample();
  }
  Rational inf() const { return parts_.front().lo; }
  Rational sup() const { return parts_.back().hi; }

  RationalIntervalSet operator|(const RationalIntervalSet& o) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return RationalIntervalSet(std::move(all));
  }

  RationalIntervalSet operator&(const RationalIntervalSet& o) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < parts_.size() && j < o.parts_.size()) {
      const Interval& a = parts_[i];
      const Interval& b = o.parts_[j];
      Interval c;
      if (a.lo > b.lo) {
        c.lo = a.lo, c.lo_closed = a.lo_closed;
      } else if (b.lo > a.lo) {
        c.lo = b.lo, c.lo_closed = b.lo_closed;
      } else {
        c.lo = a.lo, c.lo_closed = a.lo_closed && b.lo_closed;
      }
      if (a.hi < b.hi) {
        c.hi = a.hi, c.hi_closed = a.hi_closed;
      } else if (b.hi < a.hi) {
        c.hi = b.hi, c.hi_closed = b.hi_closed;
      } else {
        c.hi = a.hi, c.hi_closed = a.hi_closed && b.hi_closed;
      }
      if (!c.empty()) out.push_back(std::move(c));
      // Advance whichever ends first.
      if (a.hi < b.hi || (a.hi == b.hi && !a.hi_closed)) {
        ++i;
      } else {
        ++j;
      }
    }
    return RationalIntervalSet(std::move(out));
  }

  bool subset_of(const RationalIntervalSet& o) const { return (*this & o) == *this; }
  bool operator==(const RationalIntervalSet&) const = default;

  std::string to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      const auto& iv = parts_[k];
      if (k) s += " U ";
      if (iv.is_point()) {
        s += "{" + shadowlab::to_string(iv.lo) + "}";
      } else {
        s += (iv.lo_closed ? "[" : "(") + shadowlab::to_string(iv.lo) + "," + shadowlab::to_string(iv.hi) +
             (iv.hi_closed ? "]" : ")");
      }
    }
    return s;
  }

 private:
  void canonicalize() {
    std::erase_if(parts_, [](const Interval& iv) { return iv.empty(); });
    std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> merged;
    for (auto& iv : parts_) {
      if (!merged.empty()) {
        Interval& m = merged.back();
        const bool joins = iv.lo < m.hi || (iv.lo == m.hi && (iv.lo_closed || m.hi_closed));
        if (joins) {
          if (iv.hi > m.hi) {
            m.hi = iv.hi;
            m.hi_closed = iv.hi_closed;
          } else if (iv.hi == m.hi) {
            m.hi_closed = m.hi_closed || iv.hi_closed;
          }
          continue;
        }
      }
      merged.push_back(std::move(iv));
    }
    parts_ = std::move(merged);
  }

  std::vector<Interval> parts_;
};

}  // namespace shadowlab
