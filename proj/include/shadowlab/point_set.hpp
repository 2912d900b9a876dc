#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace shadowlab {

using PointId = std::uint32_t;

/// Subset of {0, ..., universe-1}, stored as a packed bitset.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}

  static PointSet full(std::size_t universe) {
    PointSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.set(i);
    return s;
  }
  static PointSet singleton(std::size_t universe, std::size_t i) {
    PointSet s(universe);
    s.set(i);
    return s;
  }
  /// Bit i of `mask` becomes membership of i. Requires universe <= 64.
  static PointSet from_mask(std::size_t universe, std::uint64_t mask) {
    PointSet s(universe);
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
  }

  std::size_t universe() const { return n_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  PointSet& operator&=(const PointSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  PointSet& operator|=(const PointSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// Set difference.
  PointSet& operator-=(const PointSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  bool intersects(const PointSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }
  bool subset_of(const PointSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  /// First member, or universe() when empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return n_;
  }

  template <class F>
  void for_each(F&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        std::size_t b = static_cast<std::size_t>(std::countr_zero(w));
        fn(static_cast<PointId>(k * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<PointId> members() const {
    std::vector<PointId> out;
    out.reserve(count());
    for_each([&](PointId i) { out.push_back(i); });
    return out;
  }

  /// Low 64 bits; meaningful as the full mask only for universe <= 64.
  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  std::size_t hash() const {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }

  bool operator==(const PointSet&) const = default;

  /// Orders by the integer value of the bitmask (most significant word first).
  std::strong_ordering operator<=>(const PointSet& o) const {
    if (n_ != o.n_) return n_ <=> o.n_;
    for (std::size_t k = words_.size(); k-- > 0;)
      if (words_[k] != o.words_[k]) return words_[k] <=> o.words_[k];
    return std::strong_ordering::equal;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const { return s.hash(); }
};

}  // namespace shadowlab
