#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace amplex {

/// Bitset whose width is fixed when it is created. Used for per-vertex
/// adjacency rows and vertex-set algebra.
class VertexBitset {
 public:
  VertexBitset() = default;
  explicit VertexBitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const noexcept { return bits_; }

  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const noexcept {
    return i < bits_ && ((words_[i >> 6] >> (i & 63)) & 1U);
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  VertexBitset& operator&=(const VertexBitset& o) {
    const std::size_t n = words_.size() < o.words_.size() ? words_.size() : o.words_.size();
    for (std::size_t i = 0; i < n; ++i) words_[i] &= o.words_[i];
    for (std::size_t i = n; i < words_.size(); ++i) words_[i] = 0;
    return *this;
  }

  VertexBitset& operator|=(const VertexBitset& o) {
    if (o.bits_ > bits_) resize(o.bits_);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  /// Clears every bit that is set in `o`.
  VertexBitset& subtract(const VertexBitset& o) {
    const std::size_t n = words_.size() < o.words_.size() ? words_.size() : o.words_.size();
    for (std::size_t i = 0; i < n; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  bool is_subset_of(const VertexBitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~other) return false;
    }
    return true;
  }

  void resize(std::size_t bits) {
    bits_ = bits;
    words_.resize((bits + 63) / 64, 0);
  }

  /// Calls f(i) for every set bit in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        const int b = std::countr_zero(word);
        f(w * 64 + static_cast<std::size_t>(b));
        word &= word - 1;
      }
    }
  }

  friend bool operator==(const VertexBitset& a, const VertexBitset& b) {
    const std::size_t n = a.words_.size() > b.words_.size() ? a.words_.size() : b.words_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = i < a.words_.size() ? a.words_[i] : 0;
      const auto y = i < b.words_.size() ? b.words_[i] : 0;
      if (x != y) return false;
    }
    return true;
  }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

inline VertexBitset operator&(VertexBitset a, const VertexBitset& b) { return a &= b; }

}  // namespace amplex
