#include "amplex/local_complex.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>

#include "amplex/error.hpp"

namespace amplex::local {

const std::vector<unsigned>& canonical_subsets(int k) {
  static const auto table = [] {
    std::array<std::vector<unsigned>, kMaxVertices + 1> t;
    for (int n = 0; n <= kMaxVertices; ++n) {
      std::vector<unsigned> subsets;
      for (unsigned s = 1; s < (1U << n); ++s) subsets.push_back(s);
      auto members = [](unsigned s) {
        std::vector<int> out;
        for (int i = 0; i < 32; ++i)
          if ((s >> i) & 1U) out.push_back(i);
        return out;
      };
      std::sort(subsets.begin(), subsets.end(), [&](unsigned a, unsigned b) {
        const int pa = std::popcount(a);
        const int pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return members(a) < members(b);
      });
      t[static_cast<std::size_t>(n)] = std::move(subsets);
    }
    return t;
  }();
  if (k < 0 || k > kMaxVertices)
    throw Error(ErrorKind::ResourceLimit, "local complexes hold at most 6 vertices");
  return table[static_cast<std::size_t>(k)];
}

Mask facet_bits(unsigned s) {
  Mask f = 0;
  if (std::popcount(s) < 2) return 0;
  for (unsigned b = s; b; b &= b - 1) f |= Mask{1} << (s ^ (b & (~b + 1)));
  return f;
}

Mask full(int k) {
  Mask m = 0;
  for (unsigned s : canonical_subsets(k)) m |= Mask{1} << s;
  return m;
}

bool is_closed(Mask m) {
  for (unsigned s = 1; s < 64; ++s)
    if (((m >> s) & 1U) && (m & facet_bits(s)) != facet_bits(s)) return false;
  return (m & 1U) == 0;
}

int vertex_count(Mask m) {
  int n = 0;
  for (int i = 0; i < kMaxVertices; ++i)
    if ((m >> (1U << i)) & 1U) ++n;
  return n;
}

std::uint64_t count_subcomplexes(Mask m, int k) {
  return for_each_subcomplex(m, k, [](Mask) { return true; });
}

SimplicialComplex to_complex(Mask m, std::span<const Vertex> u) {
  std::vector<Simplex> out;
  for (unsigned s = 1; s < 64; ++s) {
    if (!((m >> s) & 1U)) continue;
    std::vector<Vertex> vs;
    for (unsigned i = 0; i < u.size(); ++i)
      if ((s >> i) & 1U) vs.push_back(u[i]);
    out.push_back(Simplex::from_sorted(std::move(vs)));
  }
  return SimplicialComplex::from_closed(std::move(out));
}

Mask from_complex(const SimplicialComplex& a, std::span<const Vertex> u) {
  if (u.size() > static_cast<std::size_t>(kMaxVertices))
    throw Error(ErrorKind::ResourceLimit, "local complexes hold at most 6 vertices");
  Mask m = 0;
  a.for_each_simplex([&](const Simplex& s) {
    unsigned bits = 0;
    for (Vertex v : s) {
      auto it = std::lower_bound(u.begin(), u.end(), v);
      if (it == u.end() || *it != v)
        throw Error(ErrorKind::InvalidSubcomplex, "subcomplex uses a vertex outside U");
      bits |= 1U << (it - u.begin());
    }
    m |= Mask{1} << bits;
  });
  return m;
}

}  // namespace amplex::local
