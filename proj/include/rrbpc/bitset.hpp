#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace rrbpc {

namespace bits {

inline int words_for(int universe) { return (universe + 63) / 64; }

inline bool test(std::span<const std::uint64_t> w, int v) {
  return (w[v >> 6] >> (v & 63)) & 1U;
}

inline void set(std::span<std::uint64_t> w, int v) {
  w[v >> 6] |= std::uint64_t{1} << (v & 63);
}

/// a ⊆ b for equally sized word spans.
inline bool is_subset(std::span<const std::uint64_t> a,
                      std::span<const std::uint64_t> b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] & ~b[k]) return false;
  }
  return true;
}

inline bool intersects(std::span<const std::uint64_t> a,
                       std::span<const std::uint64_t> b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] & b[k]) return true;
  }
  return false;
}

inline bool equal(std::span<const std::uint64_t> a,
                  std::span<const std::uint64_t> b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return false;
  }
  return true;
}

}  // namespace bits

/// Fixed-universe bit set over ids 0..universe-1.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(int universe)
      : universe_(universe), words_(bits::words_for(universe), 0) {}
  BitSet(int universe, std::initializer_list<int> members)
      : BitSet(universe) {
    for (int v : members) insert(v);
  }

  int universe() const { return universe_; }

  bool contains(int v) const {
    return v >= 0 && v < universe_ && bits::test(words_, v);
  }
  void insert(int v) { bits::set(words_, v); }
  void erase(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  bool empty() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }
  int size() const {
    int count = 0;
    for (auto w : words_) count += std::popcount(w);
    return count;
  }

  bool is_subset_of(const BitSet& other) const {
    return bits::is_subset(words_, other.words_);
  }
  bool intersects(const BitSet& other) const {
    return bits::intersects(words_, other.words_);
  }

  BitSet& operator&=(const BitSet& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  BitSet& operator|=(const BitSet& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }

  /// Members in increasing order.
  std::vector<int> members() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        out.push_back(static_cast<int>(k * 64) + std::countr_zero(w));
        w &= w - 1;
      }
    }
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const BitSet&, const BitSet&) = default;

 private:
  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Customer and vertex subsets; ids are graph vertex ids.
using VertexSet = BitSet;

}  // namespace rrbpc
