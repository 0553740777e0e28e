#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "amplex/complex.hpp"

namespace fixtures {

using amplex::Simplex;
using amplex::SimplicialComplex;
using amplex::Vertex;

inline SimplicialComplex from(std::vector<std::vector<Vertex>> maximal) {
  return SimplicialComplex::from_maximal(maximal);
}

inline SimplicialComplex hollow_triangle() { return from({{0, 1}, {1, 2}, {0, 2}}); }
inline SimplicialComplex full_triangle() { return from({{0, 1, 2}}); }
inline SimplicialComplex four_cycle() { return from({{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
inline SimplicialComplex s0(Vertex a, Vertex b) { return from({{a}, {b}}); }

inline SimplicialComplex octahedron() {
  return amplex::join(amplex::join(s0(0, 1), s0(2, 3)), s0(4, 5));
}

/// The 6-vertex real projective plane (10 triangles).
inline SimplicialComplex projective_plane() {
  return from({{0, 1, 3}, {0, 1, 5}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
               {1, 2, 3}, {1, 2, 4}, {1, 4, 5}, {2, 3, 5}, {3, 4, 5}});
}

/// Random complex: `facets` random simplexes of size 1..max_size on n vertices.
inline SimplicialComplex random_complex(std::mt19937_64& rng, Vertex n, int facets, int max_size) {
  std::vector<std::vector<Vertex>> maximal;
  for (int i = 0; i < facets; ++i) {
    const int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_size));
    std::vector<Vertex> s;
    while (static_cast<int>(s.size()) < size) {
      const Vertex v = static_cast<Vertex>(rng() % n);
      bool dup = false;
      for (Vertex w : s) dup |= (w == v);
      if (!dup) s.push_back(v);
    }
    maximal.push_back(s);
  }
  return from(maximal);
}

}  // namespace fixtures
