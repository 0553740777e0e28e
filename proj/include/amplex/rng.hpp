#pragma once

#include <cstdint>
#include <random>

namespace amplex {

/// Platform-independent generator. std::mt19937_64 output is fixed by the
/// standard; the distributions below only use its raw bits, so sequences do
/// not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Fair coin, one bit of a cached 64-bit word at a time.
  bool coin() {
    if (bits_left_ == 0) {
      word_ = eng_();
      bits_left_ = 64;
    }
    const bool b = word_ & 1U;
    word_ >>= 1;
    --bits_left_;
    return b;
  }

  /// Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      const std::uint64_t x = eng_();
      if (x < limit) return x % n;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <class Vec>
  void shuffle(Vec& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t word_ = 0;
  int bits_left_ = 0;
};

}  // namespace amplex
