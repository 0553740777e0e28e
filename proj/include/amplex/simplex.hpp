#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace amplex {

using Vertex = std::uint32_t;

/// A non-empty, strictly increasing list of vertex ids.
///
/// Ordering is the canonical one used everywhere in the library: by
/// dimension first, then lexicographically on the vertex ids.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<Vertex> vs);
  /// Sorts the input; throws MalformedInput on duplicates or empty input.
  explicit Simplex(std::vector<Vertex> vs);

  /// Caller guarantees `vs` is non-empty and strictly increasing.
  static Simplex from_sorted(std::vector<Vertex> vs) {
    Simplex s;
    s.v_ = std::move(vs);
    return s;
  }
  static Simplex from_sorted(std::span<const Vertex> vs) {
    return from_sorted(std::vector<Vertex>(vs.begin(), vs.end()));
  }

  int dim() const noexcept { return static_cast<int>(v_.size()) - 1; }
  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }
  Vertex operator[](std::size_t i) const { return v_[i]; }
  Vertex front() const { return v_.front(); }
  Vertex back() const { return v_.back(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  std::span<const Vertex> vertices() const noexcept { return v_; }
  const std::vector<Vertex>& as_vector() const noexcept { return v_; }

  bool contains(Vertex x) const noexcept;
  /// True when every vertex of this simplex is a vertex of `o`.
  bool is_face_of(const Simplex& o) const noexcept;
  bool disjoint_from(const Simplex& o) const noexcept;

  Simplex with(Vertex x) const;
  /// Removes `x`; the result may be empty (only meaningful for 0-simplexes).
  Simplex without(Vertex x) const;
  Simplex united(const Simplex& o) const;

  /// The codimension-one faces, in the order obtained by deleting vertex i for
  /// i = 0..dim. Empty for a 0-simplex.
  std::vector<Simplex> facets() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    if (a.v_.size() != b.v_.size()) return a.v_.size() <=> b.v_.size();
    return a.v_ <=> b.v_;
  }

 private:
  std::vector<Vertex> v_;
};

inline std::size_t hash_vertices(std::span<const Vertex> vs) noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ vs.size();
  for (Vertex v : vs) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

struct SimplexHash {
  using is_transparent = void;
  std::size_t operator()(const Simplex& s) const noexcept { return hash_vertices(s.vertices()); }
  std::size_t operator()(std::span<const Vertex> s) const noexcept { return hash_vertices(s); }
};

struct SimplexEqual {
  using is_transparent = void;
  static std::span<const Vertex> view(const Simplex& s) noexcept { return s.vertices(); }
  static std::span<const Vertex> view(std::span<const Vertex> s) noexcept { return s; }
  template <class A, class B>
  bool operator()(const A& a, const B& b) const noexcept {
    const auto x = view(a);
    const auto y = view(b);
    return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin());
  }
};

}  // namespace amplex
