#include "amplex/ampleness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <string>
#include <unordered_map>

#include "amplex/error.hpp"
#include "amplex/local_complex.hpp"
#include "amplex/parallel.hpp"

namespace amplex {

namespace {

using local::Mask;

constexpr std::uint64_t kChunk = 256;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Vertex> sorted_unique(std::span<const Vertex> u) {
  std::vector<Vertex> out(u.begin(), u.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error(ErrorKind::InvalidQuery, "vertex set U contains a duplicate");
  return out;
}

void require_vertices(const SimplicialComplex& x, std::span<const Vertex> u) {
  for (Vertex v : u)
    if (!x.has_vertex(v))
      throw Error(ErrorKind::AbsentVertex, "vertex " + std::to_string(v) + " not in complex");
}

/// Restricted link of v on sorted U as a canonical simplex list. Grows
/// simplexes of U ∩ N(v) one vertex at a time, keeping σ only while σ ∪ {v}
/// is a simplex of X.
std::vector<Simplex> restricted_link_simplexes(const SimplicialComplex& x, Vertex v,
                                               const std::vector<Vertex>& u) {
  std::vector<Vertex> cand;
  const auto& nb = x.neighbors(v);
  for (Vertex w : u)
    if (w != v && nb.test(w)) cand.push_back(w);
  std::vector<Simplex> out;
  std::vector<std::vector<std::size_t>> frontier;  // indices into cand
  for (std::size_t i = 0; i < cand.size(); ++i) {
    out.push_back(Simplex::from_sorted(std::vector<Vertex>{cand[i]}));
    frontier.push_back({i});
  }
  std::vector<Vertex> buf;
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& f : frontier) {
      for (std::size_t j = f.back() + 1; j < cand.size(); ++j) {
        buf.clear();
        for (auto i : f) buf.push_back(cand[i]);
        buf.push_back(cand[j]);
        std::vector<Vertex> sorted = buf;
        sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), v), v);
        if (!x.contains(std::span<const Vertex>(sorted))) continue;
        out.push_back(Simplex::from_sorted(buf));
        auto g = f;
        g.push_back(j);
        next.push_back(std::move(g));
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate_pair(const SimplicialComplex& x, const std::vector<Vertex>& u,
                   const SimplicialComplex& a) {
  require_vertices(x, u);
  a.for_each_simplex([&](const Simplex& s) {
    for (Vertex w : s)
      if (!std::binary_search(u.begin(), u.end(), w))
        throw Error(ErrorKind::InvalidSubcomplex, "A uses a vertex outside U");
    if (!x.contains(s)) throw Error(ErrorKind::InvalidSubcomplex, "A is not a subcomplex of X_U");
  });
}

/// Per-worker scratch for the ampleness scan.
struct AmpleScratch {
  std::unordered_map<Mask, std::uint64_t> subcomplex_counts;
  std::vector<Mask> keys;
  std::vector<Vertex> buf;
};

/// X_U as a local mask; u sorted, |u| <= 6.
Mask induced_mask(const SimplicialComplex& x, std::span<const Vertex> u, std::vector<Vertex>& buf) {
  const int k = static_cast<int>(u.size());
  Mask m = 0;
  for (unsigned s : local::canonical_subsets(k)) {
    if (std::popcount(s) == 1) {
      m |= Mask{1} << s;
      continue;
    }
    const Mask f = local::facet_bits(s);
    if ((m & f) != f) continue;
    buf.clear();
    for (int i = 0; i < k; ++i)
      if ((s >> i) & 1U) buf.push_back(u[static_cast<std::size_t>(i)]);
    if (x.contains(std::span<const Vertex>(buf))) m |= Mask{1} << s;
  }
  return m;
}

/// Lk_X(v) ∩ X_U as a local mask.
Mask link_key(const SimplicialComplex& x, Vertex v, std::span<const Vertex> u, Mask xu,
              std::vector<Vertex>& buf) {
  const int k = static_cast<int>(u.size());
  const auto& nb = x.neighbors(v);
  unsigned near = 0;
  for (int i = 0; i < k; ++i)
    if (nb.test(u[static_cast<std::size_t>(i)])) near |= 1U << i;
  Mask key = 0;
  for (unsigned s : local::canonical_subsets(k)) {
    if ((s & near) != s) continue;
    if (std::popcount(s) == 1) {
      key |= Mask{1} << s;
      continue;
    }
    if (!((xu >> s) & 1U)) continue;
    const Mask f = local::facet_bits(s);
    if ((key & f) != f) continue;
    buf.clear();
    bool placed = false;
    for (int i = 0; i < k; ++i) {
      if (!((s >> i) & 1U)) continue;
      const Vertex w = u[static_cast<std::size_t>(i)];
      if (!placed && v < w) {
        buf.push_back(v);
        placed = true;
      }
      buf.push_back(w);
    }
    if (!placed) buf.push_back(v);
    if (x.contains(std::span<const Vertex>(buf))) key |= Mask{1} << s;
  }
  return key;
}

/// Collects the distinct link keys of all vertices outside U (sorted) and
/// returns whether they cover every subcomplex of X_U. Link keys are always
/// subcomplexes of X_U, so covering reduces to a count comparison.
bool u_is_ample(const SimplicialComplex& x, std::span<const Vertex> u, AmpleScratch& sc,
                Mask* xu_out = nullptr) {
  const int k = static_cast<int>(u.size());
  const Mask xu = induced_mask(x, u, sc.buf);
  if (xu_out) *xu_out = xu;
  auto it = sc.subcomplex_counts.find(xu);
  if (it == sc.subcomplex_counts.end())
    it = sc.subcomplex_counts.emplace(xu, local::count_subcomplexes(xu, k)).first;
  const std::uint64_t needed = it->second;
  if (x.vertex_count() - u.size() < needed && !xu_out) return false;
  sc.keys.clear();
  for (Vertex v : x.vertices())
    if (!std::binary_search(u.begin(), u.end(), v)) sc.keys.push_back(link_key(x, v, u, xu, sc.buf));
  std::sort(sc.keys.begin(), sc.keys.end());
  sc.keys.erase(std::unique(sc.keys.begin(), sc.keys.end()), sc.keys.end());
  return sc.keys.size() == needed;
}

std::vector<Vertex> subset_ids(const SimplicialComplex& x, const std::vector<std::uint32_t>& idx) {
  std::vector<Vertex> u;
  u.reserve(idx.size());
  for (auto i : idx) u.push_back(x.vertices()[i]);
  return u;
}

/// Maximal simplexes of X_U (u sorted), by clique-style growth inside U.
std::vector<std::vector<Vertex>> induced_maximal(const SimplicialComplex& x,
                                                 const std::vector<Vertex>& u) {
  std::vector<std::vector<Vertex>> maximal;
  std::vector<std::vector<std::size_t>> frontier;
  for (std::size_t i = 0; i < u.size(); ++i) frontier.push_back({i});
  std::vector<Vertex> buf;
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& f : frontier) {
      bool extended = false;
      // σ is maximal in X_U iff no vertex of U outside σ extends it; only
      // extensions by larger indices are pushed to avoid duplicates.
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (std::find(f.begin(), f.end(), j) != f.end()) continue;
        buf.clear();
        for (auto i : f) buf.push_back(u[i]);
        buf.push_back(u[j]);
        std::sort(buf.begin(), buf.end());
        if (!x.contains(std::span<const Vertex>(buf))) continue;
        extended = true;
        if (j > f.back()) {
          auto g = f;
          g.push_back(j);
          next.push_back(std::move(g));
        }
      }
      if (!extended) {
        std::vector<Vertex> s;
        for (auto i : f) s.push_back(u[i]);
        maximal.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  return maximal;
}

bool star_covers(const SimplicialComplex& x, Vertex v, const std::vector<std::vector<Vertex>>& maximal,
                 std::vector<Vertex>& buf) {
  for (const auto& s : maximal) {
    buf = s;
    if (!std::binary_search(buf.begin(), buf.end(), v))
      buf.insert(std::upper_bound(buf.begin(), buf.end(), v), v);
    if (!x.contains(std::span<const Vertex>(buf))) return false;
  }
  return true;
}

bool u_is_conic(const SimplicialComplex& x, const std::vector<Vertex>& u, std::vector<Vertex>& buf) {
  if (u.empty()) return !x.empty();
  // A covering apex v must be in or adjacent to every vertex of U.
  VertexBitset cand = x.vertex_mask();
  for (Vertex w : u) {
    VertexBitset closed = x.neighbors(w);
    closed.set(w);
    cand &= closed;
  }
  if (cand.none()) return false;
  const auto maximal = induced_maximal(x, u);
  bool found = false;
  cand.for_each([&](std::size_t v) {
    if (!found && star_covers(x, static_cast<Vertex>(v), maximal, buf)) found = true;
  });
  return found;
}

}  // namespace

SimplicialComplex link_restricted(const SimplicialComplex& x, Vertex v, std::span<const Vertex> u) {
  if (!x.has_vertex(v))
    throw Error(ErrorKind::AbsentVertex, "vertex " + std::to_string(v) + " not in complex");
  const auto su = sorted_unique(u);
  require_vertices(x, su);
  if (std::binary_search(su.begin(), su.end(), v))
    throw Error(ErrorKind::InvalidQuery, "link_restricted needs v outside U");
  return SimplicialComplex::from_closed(restricted_link_simplexes(x, v, su));
}

std::optional<Vertex> ample_witness(const SimplicialComplex& x, std::span<const Vertex> u,
                                    const SimplicialComplex& a) {
  const auto su = sorted_unique(u);
  validate_pair(x, su, a);
  const auto target = a.simplexes();
  for (Vertex v : x.vertices()) {
    if (std::binary_search(su.begin(), su.end(), v)) continue;
    if (restricted_link_simplexes(x, v, su) == target) return v;
  }
  return std::nullopt;
}

std::size_t count_witnesses(const SimplicialComplex& x, std::span<const Vertex> u,
                            const SimplicialComplex& a) {
  const auto su = sorted_unique(u);
  validate_pair(x, su, a);
  const auto target = a.simplexes();
  std::size_t n = 0;
  for (Vertex v : x.vertices()) {
    if (std::binary_search(su.begin(), su.end(), v)) continue;
    if (restricted_link_simplexes(x, v, su) == target) ++n;
  }
  return n;
}

AmpleVerdict is_r_ample(const SimplicialComplex& x, int r, const AmpleOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  if (r < 1) throw Error(ErrorKind::InvalidParameters, "ampleness needs r >= 1");
  if (r > local::kMaxVertices)
    throw Error(ErrorKind::ResourceLimit, "r-ampleness checks are limited to r <= 6");
  if (r > opts.r_cap && !opts.force)
    throw Error(ErrorKind::ResourceLimit,
                "r = " + std::to_string(r) + " exceeds the cap " + std::to_string(opts.r_cap) +
                    " (pass force to override)");
  AmpleVerdict verdict;
  verdict.r = r;
  if (x.empty()) {
    verdict.counterexample = AmpleCounterexample{{}, SimplicialComplex{}};
    verdict.elapsed_seconds = seconds_since(t0);
    return verdict;
  }
  const auto n = static_cast<std::uint32_t>(x.vertex_count());
  const SubsetSpace space(n, static_cast<std::uint32_t>(r));
  const unsigned threads = std::max(1U, opts.threads);
  std::vector<AmpleScratch> scratch(threads);
  const auto failure = first_hit_in_ranges(
      space.total(), threads, kChunk,
      [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        auto& sc = scratch[worker];
        std::vector<Vertex> u;
        return space.visit(begin, end, [&](std::uint64_t, const std::vector<std::uint32_t>& idx) {
          u.clear();
          for (auto i : idx) u.push_back(x.vertices()[i]);
          return !u_is_ample(x, u, sc);
        });
      });

  if (failure) {
    space.visit(*failure, *failure + 1, [&](std::uint64_t, const std::vector<std::uint32_t>& idx) {
      auto u = subset_ids(x, idx);
      AmpleScratch sc;
      Mask xu = 0;
      u_is_ample(x, u, sc, &xu);
      local::for_each_subcomplex(xu, static_cast<int>(u.size()), [&](Mask a) {
        if (std::binary_search(sc.keys.begin(), sc.keys.end(), a)) return true;
        verdict.counterexample = AmpleCounterexample{u, local::to_complex(a, u)};
        return false;
      });
      return true;
    });
  } else {
    verdict.ample = true;
    if (opts.witness_table) {
      space.visit(0, space.total(), [&](std::uint64_t, const std::vector<std::uint32_t>& idx) {
        const auto u = subset_ids(x, idx);
        std::vector<Vertex> buf;
        const Mask xu = induced_mask(x, u, buf);
        std::unordered_map<Mask, Vertex> first;
        for (Vertex v : x.vertices())
          if (!std::binary_search(u.begin(), u.end(), v))
            first.emplace(link_key(x, v, u, xu, buf), v);
        local::for_each_subcomplex(xu, static_cast<int>(u.size()), [&](Mask a) {
          verdict.witness_table.push_back({u, local::to_complex(a, u), first.at(a)});
          return true;
        });
        return false;
      });
    }
  }
  verdict.elapsed_seconds = seconds_since(t0);
  return verdict;
}

ConicVerdict is_r_conic(const SimplicialComplex& x, int r, const AmpleOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ConicVerdict verdict;
  verdict.r = r;
  if (r < 0) {
    verdict.conic = true;
    return verdict;
  }
  if (x.empty()) {
    verdict.counterexample = std::vector<Vertex>{};
    verdict.elapsed_seconds = seconds_since(t0);
    return verdict;
  }
  const auto n = static_cast<std::uint32_t>(x.vertex_count());
  const SubsetSpace space(n, static_cast<std::uint32_t>(r));
  const unsigned threads = std::max(1U, opts.threads);
  const auto failure = first_hit_in_ranges(
      space.total(), threads, kChunk, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        std::vector<Vertex> buf;
        return space.visit(begin, end, [&](std::uint64_t, const std::vector<std::uint32_t>& idx) {
          return !u_is_conic(x, subset_ids(x, idx), buf);
        });
      });
  if (failure) {
    space.visit(*failure, *failure + 1, [&](std::uint64_t, const std::vector<std::uint32_t>& idx) {
      verdict.counterexample = subset_ids(x, idx);
      return true;
    });
  } else {
    verdict.conic = true;
  }
  verdict.elapsed_seconds = seconds_since(t0);
  return verdict;
}

int max_ampleness(const SimplicialComplex& x, int r_cap, const AmpleOptions& opts) {
  int best = 0;
  for (int r = 1; r <= r_cap; ++r) {
    if (!is_r_ample(x, r, opts).ample) break;
    best = r;
  }
  return best;
}

int max_conicity(const SimplicialComplex& x, int r_cap, const AmpleOptions& opts) {
  int best = -1;
  for (int r = 0; r <= r_cap; ++r) {
    if (!is_r_conic(x, r, opts).conic) break;
    best = r;
  }
  return best;
}

bool is_embedding(const SimplicialComplex& a, const SimplicialComplex& x, const VertexMap& f) {
  std::vector<Vertex> image;
  std::unordered_map<Vertex, Vertex> fwd;
  for (const auto& [from, to] : f) {
    if (!a.has_vertex(from) || !x.has_vertex(to)) return false;
    if (!fwd.emplace(from, to).second) return false;
    image.push_back(to);
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  std::vector<Vertex> domain;
  for (const auto& p : f) domain.push_back(p.first);
  std::sort(domain.begin(), domain.end());
  const auto ab = induced(a, domain);
  const auto xi = induced(x, image);
  if (ab.simplex_count() != xi.simplex_count()) return false;
  bool ok = true;
  ab.for_each_simplex([&](const Simplex& s) {
    if (!ok) return;
    std::vector<Vertex> img;
    for (Vertex v : s) img.push_back(fwd.at(v));
    std::sort(img.begin(), img.end());
    if (!x.contains(std::span<const Vertex>(img))) ok = false;
  });
  return ok;
}

std::optional<VertexMap> extend_embedding(const SimplicialComplex& x, const SimplicialComplex& a,
                                          std::span<const Vertex> b_vertices, const VertexMap& f_b) {
  const auto b = sorted_unique(b_vertices);
  for (Vertex v : b)
    if (!a.has_vertex(v))
      throw Error(ErrorKind::InvalidEmbedding, "B vertex " + std::to_string(v) + " not in A");
  std::vector<Vertex> keys;
  for (const auto& p : f_b) keys.push_back(p.first);
  std::sort(keys.begin(), keys.end());
  if (keys != b) throw Error(ErrorKind::InvalidEmbedding, "f_B must be defined exactly on B");
  if (!is_embedding(a, x, f_b))
    throw Error(ErrorKind::InvalidEmbedding, "f_B is not an embedding of A_B into X");

  std::unordered_map<Vertex, Vertex> f(f_b.begin(), f_b.end());
  VertexBitset placed(a.id_bound());
  for (Vertex v : b) placed.set(v);
  for (Vertex w : a.vertices()) {
    if (placed.test(w)) continue;
    std::vector<Vertex> u;
    placed.for_each([&](std::size_t v) { u.push_back(f.at(static_cast<Vertex>(v))); });
    std::sort(u.begin(), u.end());
    // Image of Lk_A(w) restricted to the already placed vertices.
    std::vector<Simplex> target;
    a.for_each_simplex([&](const Simplex& s) {
      if (s.size() < 2 || !s.contains(w)) return;
      std::vector<Vertex> img;
      for (Vertex v : s) {
        if (v == w) continue;
        if (!placed.test(v)) return;
        img.push_back(f.at(v));
      }
      std::sort(img.begin(), img.end());
      target.push_back(Simplex::from_sorted(std::move(img)));
    });
    const auto v = ample_witness(x, u, SimplicialComplex::from_closed(std::move(target)));
    if (!v) return std::nullopt;
    f.emplace(w, *v);
    placed.set(w);
  }
  VertexMap out(f.begin(), f.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t dedekind_reduced(int r) {
  if (r < 0) throw Error(ErrorKind::InvalidParameters, "r must be non-negative");
  if (r > 6) throw Error(ErrorKind::ResourceLimit, "dedekind_reduced is limited to r <= 6");
  return local::count_subcomplexes(local::full(r), r);
}

std::uint64_t min_vertices_for_ample(int r) {
  return dedekind_reduced(r) + static_cast<std::uint64_t>(r);
}

SimplicialComplex stars_intersection(const SimplicialComplex& x, std::span<const Vertex> vs) {
  if (vs.empty()) throw Error(ErrorKind::InvalidQuery, "need at least one vertex");
  require_vertices(x, vs);
  std::vector<Simplex> out;
  x.for_each_simplex([&](const Simplex& s) {
    for (Vertex v : vs)
      if (!s.contains(v) && !x.contains(s.with(v))) return;
    out.push_back(s);
  });
  return SimplicialComplex::from_closed(std::move(out));
}

}  // namespace amplex
