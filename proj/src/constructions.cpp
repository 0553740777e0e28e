#include "amplex/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "amplex/error.hpp"
#include "amplex/local_complex.hpp"
#include "amplex/parallel.hpp"
#include "amplex/rng.hpp"

namespace amplex {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

bool is_generator(std::uint64_t g, std::uint64_t q, const std::vector<std::uint64_t>& factors) {
  if (g % q == 0) return false;
  for (auto f : factors)
    if (powmod(g, (q - 1) / f, q) == 1) return false;
  return true;
}

using SimplexSet = std::unordered_set<Simplex, SimplexHash, SimplexEqual>;

bool facets_present(const std::vector<Vertex>& tau, const SimplexSet& level) {
  std::vector<Vertex> face(tau.size() - 1);
  // The facet without the last vertex is the generating simplex itself.
  for (std::size_t i = 0; i + 1 < tau.size(); ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < tau.size(); ++j)
      if (j != i) face[k++] = tau[j];
    if (level.find(std::span<const Vertex>(face)) == level.end()) return false;
  }
  return true;
}

// Level-by-level builder: candidates at level d extend a (d-1)-simplex by a
// larger vertex adjacent to all of it, with every facet present.
template <class Accept>
std::vector<Simplex> grow_levels(const std::vector<Vertex>& vertices, std::size_t id_bound,
                                 int max_dim, Accept&& accept) {
  std::vector<Simplex> all;
  std::vector<Simplex> cur;
  for (Vertex v : vertices) cur.push_back(Simplex::from_sorted(std::vector<Vertex>{v}));
  all = cur;
  std::vector<VertexBitset> adj(id_bound, VertexBitset(id_bound));
  VertexBitset present(id_bound);
  for (Vertex v : vertices) present.set(v);
  for (int d = 1; !cur.empty(); ++d) {
    SimplexSet level;
    if (d >= 3) level.insert(cur.begin(), cur.end());
    std::vector<Simplex> next;
    const bool keep = d <= max_dim;
    for (const auto& s : cur) {
      VertexBitset common = d == 1 ? present : adj[s[0]];
      for (std::size_t i = 1; i < s.size(); ++i) common &= adj[s[i]];
      std::vector<Vertex> tau(s.begin(), s.end());
      tau.push_back(0);
      common.for_each([&](std::size_t w) {
        if (w <= s.back()) return;
        tau.back() = static_cast<Vertex>(w);
        if (d >= 3 && !facets_present(tau, level)) return;
        if (accept(tau, keep)) {
          next.push_back(Simplex::from_sorted(tau));
          if (d == 1) {
            adj[tau[0]].set(tau[1]);
            adj[tau[1]].set(tau[0]);
          }
        }
      });
    }
    if (!keep) break;
    all.insert(all.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  return all;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (!(d & 1U)) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s && comp; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

std::uint64_t least_primitive_root(std::uint64_t q) {
  if (!is_prime(q)) throw Error(ErrorKind::InvalidParameters, "q must be prime");
  if (q == 2) return 1;
  const auto f = prime_factors(q - 1);
  for (std::uint64_t g = 2; g < q; ++g)
    if (is_generator(g, q, f)) return g;
  throw Error(ErrorKind::InvalidParameters, "no primitive root found");
}

PaleyResidueSet paley_residues(const PrimeFieldSpec& spec) {
  const auto q = spec.q, p = spec.p;
  if (!is_prime(q))
    throw Error(ErrorKind::InvalidParameters, "q must be prime (prime powers are not supported)");
  if (q > kPaleyMaxQ) throw Error(ErrorKind::ResourceLimit, "q exceeds the discrete-log table limit");
  if (p < 3 || !is_prime(p)) throw Error(ErrorKind::InvalidParameters, "p must be an odd prime");
  if ((q - 1) % p != 0) throw Error(ErrorKind::InvalidParameters, "p must divide q-1");
  const auto factors = prime_factors(q - 1);
  std::uint64_t g = 0;
  if (spec.g) {
    g = *spec.g % q;
    if (!is_generator(g, q, factors))
      throw Error(ErrorKind::InvalidParameters, "g is not a primitive element mod q");
  } else {
    g = least_primitive_root(q);
  }
  PaleyResidueSet res;
  res.q = q;
  res.p = p;
  res.g = g;
  res.dlog.assign(q, 0);
  std::uint64_t x = 1;
  for (std::uint64_t a = 0; a + 1 < q; ++a) {
    res.dlog[x] = static_cast<std::uint32_t>(a);
    x = mulmod(x, g, q);
  }
  res.qr.assign(p, 0);
  for (std::uint64_t b = 0; b < p; ++b) res.qr[b * b % p] = 1;
  for (std::uint64_t y = 1; y < q; ++y)
    if (res.qr[res.dlog[y] % p]) res.elements.push_back(y);
  return res;
}

SimplicialComplex paley_complex(const PaleyResidueSet& res, int max_dim) {
  if (max_dim < 0) throw Error(ErrorKind::InvalidParameters, "max_dim must be non-negative");
  const auto q = res.q, p = res.p;
  std::vector<Vertex> vs(q);
  for (std::uint64_t i = 0; i < q; ++i) vs[i] = static_cast<Vertex>(i);
  auto accept = [&](const std::vector<Vertex>& tau, bool keep) {
    if (!keep) return false;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < tau.size(); ++i)
      for (std::size_t j = i + 1; j < tau.size(); ++j) sum += res.dlog[(tau[j] - tau[i]) % q];
    return res.qr[sum % p] != 0;
  };
  return SimplicialComplex::from_closed(grow_levels(vs, q, max_dim, accept));
}

SimplicialComplex paley_complex(const PrimeFieldSpec& spec, int max_dim) {
  return paley_complex(paley_residues(spec), max_dim);
}

bool paley_parameter_check(int r, std::uint64_t p, std::uint64_t n) {
  using boost::multiprecision::cpp_int;
  if (r < 1) throw Error(ErrorKind::InvalidParameters, "r must be at least 1");
  if (r > 6) return false;  // 2^(2^r + 2r) exceeds every 64-bit p
  const cpp_int threshold = cpp_int(1) << ((1 << r) + 2 * r);
  if (cpp_int(p) <= threshold) return false;
  cpp_int rhs = cpp_int(r) * r;
  for (int i = 0; i < 2 * r; ++i) rhs *= p;
  return cpp_int(n) > rhs;
}

MedialSample medial_sample(std::size_t n, std::uint64_t seed, std::optional<int> max_dim) {
  if (n > kMedialMaxN) throw Error(ErrorKind::ResourceLimit, "medial_sample: n above limit");
  if (max_dim && *max_dim < 0) throw Error(ErrorKind::InvalidParameters, "max_dim must be non-negative");
  Rng rng(seed);
  MedialSample out;
  out.n = n;
  out.seed = seed;
  std::vector<Vertex> present;
  for (std::size_t v = 0; v < n; ++v)
    if (rng.coin()) present.push_back(static_cast<Vertex>(v));
  std::uint64_t h = n;
  auto accept = [&](const std::vector<Vertex>&, bool keep) {
    ++h;
    return keep && rng.coin();
  };
  out.complex = SimplicialComplex::from_closed(
      grow_levels(present, n, max_dim.value_or(std::numeric_limits<int>::max()), accept));
  out.h = h;
  return out;
}

std::uint64_t medial_probability(const SimplicialComplex& x, std::size_t n) {
  const auto ctx = AmbientContext::standard(n);
  return x.simplex_count() + count_external_simplexes(x, ctx, x.dim() + 1);
}

double ampleness_failure_log_bound(std::uint64_t n, int r) {
  if (r < 1 || n <= static_cast<std::uint64_t>(r))
    throw Error(ErrorKind::InvalidParameters, "requires n > r >= 1");
  if (r > 30) throw Error(ErrorKind::InvalidParameters, "r too large");
  const double two_r = std::ldexp(1.0, r);
  return r * std::log(static_cast<double>(n)) + two_r * std::log(2.0) +
         static_cast<double>(n - r) * std::log1p(-std::ldexp(1.0, -static_cast<int>(two_r)));
}

double ampleness_failure_bound(std::uint64_t n, int r) {
  return std::exp(ampleness_failure_log_bound(n, r));
}

namespace {

// Collects cones for one tower step; false if the budget would be exceeded.
bool collect_cones(const SimplicialComplex& x, std::size_t max_vertices, bool include_empty,
                   std::size_t budget, std::vector<std::pair<Vertex, SimplicialComplex>>& cones) {
  const std::size_t room = budget > x.vertex_count() ? budget - x.vertex_count() : 0;
  Vertex next = static_cast<Vertex>(x.id_bound());
  bool ok = true;
  enumerate_subcomplexes(x, max_vertices, [&](const SimplicialComplex& a) {
    if (a.empty() && !include_empty) return true;
    if (cones.size() >= room) {
      ok = false;
      return false;
    }
    cones.emplace_back(next++, a);
    return true;
  });
  return ok;
}

TowerResult run_tower(SimplicialComplex x, int steps, std::size_t budget, std::size_t max_vertices,
                      bool include_empty) {
  if (steps < 0) throw Error(ErrorKind::InvalidParameters, "level count must be non-negative");
  TowerResult out;
  out.budget = budget;
  out.stages.push_back(TowerStage{0, x, 0, {}});
  for (int k = 1; k <= steps; ++k) {
    std::vector<std::pair<Vertex, SimplicialComplex>> cones;
    if (!collect_cones(x, max_vertices, include_empty, budget, cones)) {
      out.complete = false;
      break;
    }
    auto y = attach_cones(x, cones);
    out.stages.push_back(TowerStage{k, y, x.vertex_count(), std::move(cones)});
    x = std::move(y);
  }
  return out;
}

}  // namespace

TowerResult rado_tower(int levels, std::size_t budget) {
  return run_tower(SimplicialComplex::from_maximal({{0}}), levels, budget, SIZE_MAX, true);
}

TowerResult barmak_tower(int n, int iterations, std::size_t budget, bool include_empty) {
  if (n < 0) throw Error(ErrorKind::InvalidParameters, "n must be non-negative");
  return run_tower(sphere_join(static_cast<std::size_t>(n) + 1), iterations, budget,
                   2 * static_cast<std::size_t>(n) + 1, include_empty);
}

LazyRadoComplex::LazyRadoComplex(int base_stage) {
  if (base_stage < 0 || base_stage > 2)
    throw Error(ErrorKind::InvalidParameters, "lazy Rado base stage must be 0, 1 or 2");
  auto tower = rado_tower(base_stage);
  x_ = tower.stages.back().complex;
  stage_.assign(x_.id_bound(), 0);
  for (const auto& st : tower.stages)
    for (const auto& [v, a] : st.label_map) stage_[v] = st.stage;
}

Vertex LazyRadoComplex::witness(std::span<const Vertex> u, const SimplicialComplex& a) {
  if (auto w = ample_witness(x_, u, a)) return *w;
  int k = 0;
  for (Vertex v : u) k = std::max(k, stage_.at(v));
  const auto apex = static_cast<Vertex>(x_.id_bound());
  const std::pair<Vertex, SimplicialComplex> c{apex, a};
  x_ = attach_cones(x_, std::span(&c, 1));
  stage_.resize(x_.id_bound(), 0);
  stage_[apex] = k + 1;
  ++attached_;
  return apex;
}

SimplicialComplex example_thirteen() {
  std::vector<std::vector<Vertex>> maximal;
  for (Vertex i = 0; i < 13; ++i) {
    for (Vertex d : {1U, 3U, 4U}) maximal.push_back({i, (i + d) % 13});
    maximal.push_back({i, (i + 1) % 13, (i + 4) % 13});
  }
  return SimplicialComplex::from_maximal(maximal);
}

SimplicialComplex sphere_join(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidParameters, "sphere_join needs k >= 1");
  auto pair = [](Vertex i) { return SimplicialComplex::from_maximal({{2 * i}, {2 * i + 1}}); };
  auto x = pair(0);
  for (std::size_t i = 1; i < k; ++i) x = join(x, pair(static_cast<Vertex>(i)));
  return x;
}

SearchResult search_ample(std::size_t n, int r, std::uint64_t trials, std::uint64_t seed,
                          const AmpleOptions& opts) {
  if (r < 1) throw Error(ErrorKind::InvalidParameters, "r must be at least 1");
  if (r > local::kMaxVertices || (r > opts.r_cap && !opts.force))
    throw Error(ErrorKind::ResourceLimit, "r exceeds the ampleness cap");
  if (n > kMedialMaxN) throw Error(ErrorKind::ResourceLimit, "medial_sample: n above limit");
  AmpleOptions inner = opts;
  inner.threads = 1;
  inner.witness_table = false;
  const auto need = min_vertices_for_ample(r);
  auto scan = [&](unsigned, std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
    for (std::uint64_t i = b; i < e; ++i) {
      const auto s = medial_sample(n, seed + i);
      if (s.complex.vertex_count() < need) continue;
      if (is_r_ample(s.complex, r, inner).ample) return i;
    }
    return std::nullopt;
  };
  SearchResult out;
  const auto hit = first_hit_in_ranges(trials, opts.threads, 8, scan);
  if (!hit) {
    out.trials_used = trials;
    return out;
  }
  out.trials_used = *hit + 1;
  out.seed = seed + *hit;
  out.complex = medial_sample(n, *out.seed).complex;
  return out;
}

}  // namespace amplex
