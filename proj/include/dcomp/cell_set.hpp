#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace dcomp {

/// Dense bit set over flat cell indices. Used for components, reachability
/// rows, and search keys.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  bool intersects(const CellSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }
  bool subset_of(const CellSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  CellSet& operator|=(const CellSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  CellSet& operator&=(const CellSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  CellSet& subtract(const CellSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
  friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const { return next(0); }
  /// Lowest set bit at position >= from, or size().
  std::size_t next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t k = from >> 6;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) {
        std::size_t i = (k << 6) + static_cast<std::size_t>(std::countr_zero(w));
        return i < size_ ? i : size_;
      }
      if (++k >= words_.size()) return size_;
      w = words_[k];
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = first(); i < size_; i = next(i + 1)) out.push_back(i);
    return out;
  }

  friend bool operator==(const CellSet&, const CellSet&) = default;
  friend bool operator<(const CellSet& a, const CellSet& b) {
    // Orders by lowest differing bit; sets containing that bit come first.
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      std::uint64_t d = a.words_[k] ^ b.words_[k];
      if (d != 0) return (a.words_[k] >> std::countr_zero(d)) & 1U;
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct CellSetHash {
  std::size_t operator()(const CellSet& s) const { return s.hash(); }
};

}  // namespace dcomp
