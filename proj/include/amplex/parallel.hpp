#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace amplex {

/// Scans [0, total) in chunks on `threads` workers and returns the smallest
/// index reported as a hit. `scan(worker, begin, end)` returns the first hit
/// inside its half-open range. Chunks starting past the best hit found so far
/// are skipped, so the answer equals the sequential one for any thread count.
inline std::optional<std::uint64_t> first_hit_in_ranges(
    std::uint64_t total, unsigned threads, std::uint64_t chunk,
    const std::function<std::optional<std::uint64_t>(unsigned, std::uint64_t, std::uint64_t)>& scan) {
  if (total == 0) return std::nullopt;
  chunk = std::max<std::uint64_t>(chunk, 1);
  threads = std::max(1U, threads);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{UINT64_MAX};
  auto worker = [&](unsigned id) {
    for (;;) {
      const std::uint64_t begin = next.fetch_add(chunk);
      if (begin >= total || begin > best.load()) return;
      const std::uint64_t end = std::min(total, begin + chunk);
      if (auto hit = scan(id, begin, end)) {
        std::uint64_t cur = best.load();
        while (*hit < cur && !best.compare_exchange_weak(cur, *hit)) {
        }
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  const auto b = best.load();
  if (b == UINT64_MAX) return std::nullopt;
  return b;
}

/// Binomial coefficient saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

/// k-combinations of {0..n-1} in lexicographic order, starting at a rank.
class Combination {
 public:
  Combination(std::uint32_t n, std::uint32_t k, std::uint64_t rank) : n_(n), idx_(k) {
    std::uint32_t start = 0;
    for (std::uint32_t pos = 0; pos < k; ++pos) {
      for (std::uint32_t c = start;; ++c) {
        const std::uint64_t below = binomial(n - c - 1, k - pos - 1);
        if (rank < below) {
          idx_[pos] = c;
          start = c + 1;
          break;
        }
        rank -= below;
      }
    }
  }

  const std::vector<std::uint32_t>& indices() const noexcept { return idx_; }

  /// Advances to the next combination; false when exhausted.
  bool next() {
    const auto k = static_cast<std::uint32_t>(idx_.size());
    std::uint32_t i = k;
    while (i > 0) {
      --i;
      if (idx_[i] < n_ - k + i) {
        ++idx_[i];
        for (std::uint32_t j = i + 1; j < k; ++j) idx_[j] = idx_[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> idx_;
};

/// Subsets of an n-set of size 0..max_size, in the order (size, lex). The
/// global index of a subset is its position in that order.
class SubsetSpace {
 public:
  SubsetSpace(std::uint32_t n, std::uint32_t max_size) : n_(n) {
    max_size = std::min(max_size, n);
    std::uint64_t acc = 0;
    for (std::uint32_t k = 0; k <= max_size; ++k) {
      offsets_.push_back(acc);
      const auto c = binomial(n, k);
      acc = (UINT64_MAX - acc < c) ? UINT64_MAX : acc + c;
    }
    total_ = acc;
  }

  std::uint64_t total() const noexcept { return total_; }
  std::uint32_t max_size() const noexcept { return static_cast<std::uint32_t>(offsets_.size()) - 1; }

  /// Visits subsets with global index in [begin, end): f(global_index,
  /// indices) returns true to stop early. Returns the index it stopped at.
  template <class F>
  std::optional<std::uint64_t> visit(std::uint64_t begin, std::uint64_t end, F&& f) const {
    std::uint64_t g = begin;
    while (g < end) {
      std::uint32_t k = 0;
      while (k + 1 < offsets_.size() && offsets_[k + 1] <= g) ++k;
      Combination c(n_, k, g - offsets_[k]);
      const std::uint64_t level_end =
          k + 1 < offsets_.size() ? offsets_[k + 1] : total_;
      for (;;) {
        if (f(g, c.indices())) return g;
        ++g;
        if (g >= end || g >= level_end || !c.next()) break;
      }
    }
    return std::nullopt;
  }

 private:
  std::uint32_t n_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t total_ = 0;
};

}  // namespace amplex
