#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "amplex/complex.hpp"

/// Complexes on at most six local vertices packed into one 64-bit word: bit s
/// (1 <= s < 2^k) is set iff the subset with member mask s is a simplex. This
/// is the representation the ampleness engine and the Dedekind counter work in.
namespace amplex::local {

constexpr int kMaxVertices = 6;
using Mask = std::uint64_t;

/// Non-empty subsets of {0..k-1} in canonical simplex order (size, then
/// lexicographic on the sorted member list).
const std::vector<unsigned>& canonical_subsets(int k);

/// Bit set of the facets of subset s (empty for singletons).
Mask facet_bits(unsigned s);

Mask full(int k);
bool is_closed(Mask m);
int vertex_count(Mask m);

/// Visits every subcomplex of m in the library's canonical enumeration order
/// (include/exclude search, exclude first). `visit(Mask)` returns false to
/// stop. Returns the number visited.
template <class Visit>
std::uint64_t for_each_subcomplex(Mask m, int k, Visit&& visit);

std::uint64_t count_subcomplexes(Mask m, int k);

/// Maps between local masks and complexes on the sorted vertex list `u`.
SimplicialComplex to_complex(Mask m, std::span<const Vertex> u);
/// Throws InvalidSubcomplex if `a` uses vertices outside `u`.
Mask from_complex(const SimplicialComplex& a, std::span<const Vertex> u);

// -- implementation --------------------------------------------------------

namespace detail {

struct Walk {
  const std::vector<unsigned>* order;
  std::vector<Mask> facets;
  Mask members;
  std::uint64_t count = 0;
  bool stopped = false;
};

template <class Visit>
void descend(Walk& w, std::size_t i, Mask cur, Visit& visit) {
  const auto& order = *w.order;
  while (i < order.size() && !((w.members >> order[i]) & 1U)) ++i;
  if (i == order.size()) {
    ++w.count;
    if (!visit(cur)) w.stopped = true;
    return;
  }
  descend(w, i + 1, cur, visit);
  if (w.stopped) return;
  const Mask f = w.facets[i];
  if ((cur & f) == f) descend(w, i + 1, cur | (Mask{1} << order[i]), visit);
}

}  // namespace detail

template <class Visit>
std::uint64_t for_each_subcomplex(Mask m, int k, Visit&& visit) {
  detail::Walk w;
  w.order = &canonical_subsets(k);
  w.members = m;
  w.facets.reserve(w.order->size());
  for (unsigned s : *w.order) w.facets.push_back(facet_bits(s));
  detail::descend(w, 0, Mask{0}, visit);
  return w.count;
}

}  // namespace amplex::local
