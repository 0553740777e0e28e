#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "amplex/ampleness.hpp"
#include "amplex/error.hpp"
#include "fixtures.hpp"

using namespace amplex;
using fixtures::from;

namespace {

// Monotone Boolean functions on m variables as truth tables over 2^m bits.
std::vector<std::uint64_t> monotone_functions(int m) {
  const int points = 1 << m;
  std::vector<std::uint64_t> out;
  if (m <= 4) {
    const std::uint64_t limit = std::uint64_t{1} << points;
    for (std::uint64_t f = 0; f < limit; ++f) {
      bool mono = true;
      for (int x = 0; x < points && mono; ++x)
        for (int i = 0; i < m && mono; ++i)
          if (!(x & (1 << i)) && ((f >> x) & 1) && !((f >> (x | (1 << i))) & 1)) mono = false;
      if (mono) out.push_back(f);
    }
    return out;
  }
  // f on m vars = (f0 on x_m = 0, f1 on x_m = 1) with f0 <= f1.
  const auto lower = monotone_functions(m - 1);
  const int half = points / 2;
  for (auto f0 : lower)
    for (auto f1 : lower)
      if ((f0 & ~f1) == 0) out.push_back(f0 | (f1 << half));
  return out;
}

std::uint64_t count_monotone_pairs(int m) {
  const auto fs = monotone_functions(m);
  std::uint64_t n = 0;
  for (auto a : fs)
    for (auto b : fs) n += (a & ~b) == 0;
  return n;
}

// Ampleness straight from the definition, via the generic witness search only.
bool ample_by_definition(const SimplicialComplex& x, int r) {
  if (x.empty()) return false;
  const auto vs = x.vertices();
  const auto n = vs.size();
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    if (std::popcount(bits) > r) continue;
    std::vector<Vertex> u;
    for (std::size_t i = 0; i < n; ++i)
      if (bits & (1u << i)) u.push_back(vs[i]);
    bool ok = true;
    enumerate_subcomplexes(induced(x, u), [&](const SimplicialComplex& a) {
      ok = ample_witness(x, u, a).has_value();
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

// All complexes whose vertex set is exactly {0..k-1}.
std::vector<SimplicialComplex> complexes_on(int k) {
  std::vector<SimplicialComplex> out;
  std::vector<Vertex> all(k);
  for (int i = 0; i < k; ++i) all[i] = static_cast<Vertex>(i);
  enumerate_subcomplexes(full_simplex(all), [&](const SimplicialComplex& a) {
    if (static_cast<int>(a.vertex_count()) == k) out.push_back(a);
    return true;
  });
  return out;
}

bool brute_embedding(const SimplicialComplex& a, const SimplicialComplex& x, const VertexMap& f) {
  std::vector<Vertex> image;
  for (auto [s, t] : f) image.push_back(t);
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  auto map_of = [&](Vertex v) {
    for (auto [s, t] : f)
      if (s == v) return t;
    return Vertex{0};
  };
  std::vector<Vertex> dom;
  for (auto [s, t] : f) dom.push_back(s);
  const auto n = dom.size();
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    std::vector<Vertex> s, t;
    for (std::size_t i = 0; i < n; ++i)
      if (bits & (1u << i)) {
        s.push_back(dom[i]);
        t.push_back(map_of(dom[i]));
      }
    if (a.contains(Simplex(s)) != x.contains(Simplex(t))) return false;
  }
  return true;
}

// The extension property, searched exhaustively.
bool extension_property(const SimplicialComplex& x, int r) {
  if (x.empty()) return false;
  const auto xv = x.vertices();
  for (int k = 1; k <= r + 1; ++k) {
    for (const auto& a : complexes_on(k)) {
      for (std::uint32_t bmask = 0; bmask < (1u << k); ++bmask) {
        std::vector<Vertex> bv, rest;
        for (int i = 0; i < k; ++i) (bmask & (1u << i) ? bv : rest).push_back(static_cast<Vertex>(i));
        // Every injective f_B which is an embedding.
        VertexMap fb;
        std::function<bool(std::size_t)> over_fb = [&](std::size_t i) -> bool {
          if (i == bv.size()) {
            if (!brute_embedding(induced(a, bv), x, fb)) return true;
            VertexMap fa = fb;
            std::function<bool(std::size_t)> extend = [&](std::size_t j) -> bool {
              if (j == rest.size()) return brute_embedding(a, x, fa);
              for (Vertex t : xv) {
                if (std::any_of(fa.begin(), fa.end(), [&](auto& p) { return p.second == t; })) continue;
                fa.emplace_back(rest[j], t);
                if (extend(j + 1)) return true;
                fa.pop_back();
              }
              return false;
            };
            return extend(0);
          }
          for (Vertex t : xv) {
            if (std::any_of(fb.begin(), fb.end(), [&](auto& p) { return p.second == t; })) continue;
            fb.emplace_back(bv[i], t);
            const bool ok = over_fb(i + 1);
            fb.pop_back();
            if (!ok) return false;
          }
          return true;
        };
        if (!over_fb(0)) return false;
      }
    }
  }
  return true;
}

void assert_vertex_bound(const SimplicialComplex& x, int r, const AmpleVerdict& v) {
  if (v.ample) CHECK(x.vertex_count() >= min_vertices_for_ample(r));
}

SimplicialComplex random_small(std::mt19937_64& rng) {
  const Vertex n = 3 + static_cast<Vertex>(rng() % 4);
  return fixtures::random_complex(rng, n, 1 + static_cast<int>(rng() % 7), 3);
}

SimplicialComplex five_cycle() { return cycle_graph(5); }

}  // namespace

TEST_CASE("Dedekind values and independent monotone-function oracle") {
  CHECK(dedekind_reduced(0) == 1);
  CHECK(dedekind_reduced(1) == 2);
  CHECK(dedekind_reduced(2) == 5);
  CHECK(dedekind_reduced(3) == 19);
  CHECK(dedekind_reduced(4) == 167);
  // M(r) counts monotone Boolean functions on r variables.
  for (int r = 0; r <= 4; ++r) CHECK(monotone_functions(r).size() == dedekind_reduced(r) + 1);
  CHECK(count_monotone_pairs(4) == dedekind_reduced(5) + 1);
  CHECK(dedekind_reduced(5) == 7580);
  CHECK(min_vertices_for_ample(1) == 3);
  CHECK(min_vertices_for_ample(2) == 7);
  CHECK(min_vertices_for_ample(3) == 22);
  CHECK_THROWS_AS(dedekind_reduced(7), Error);
}

TEST_CASE("Dedekind r = 6 agrees with the pair oracle" * doctest::skip(false)) {
  CHECK(dedekind_reduced(6) == 7828353);
  CHECK(count_monotone_pairs(5) == 7828354);
}

TEST_CASE("link_restricted") {
  const std::vector<Vertex> u01{0, 1};
  CHECK(link_restricted(fixtures::full_triangle(), 2, u01) == from({{0, 1}}));
  CHECK(link_restricted(fixtures::hollow_triangle(), 2, u01) == from({{0}, {1}}));
  try {
    link_restricted(fixtures::full_triangle(), 0, u01);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidQuery);
  }
}

TEST_CASE("ample_witness") {
  const auto oct = fixtures::octahedron();
  CHECK(ample_witness(oct, std::vector<Vertex>{}, SimplicialComplex{}) == Vertex{0});
  const std::vector<Vertex> u01{0, 1};
  CHECK_FALSE(ample_witness(fixtures::full_triangle(), u01, from({{0}, {1}})).has_value());
  CHECK(ample_witness(fixtures::full_triangle(), u01, from({{0, 1}})) == Vertex{2});
  try {
    ample_witness(fixtures::hollow_triangle(), std::vector<Vertex>{0}, from({{1}}));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidSubcomplex);
  }
  CHECK(count_witnesses(oct, std::vector<Vertex>{0}, from({{0}})) == 4);
}

TEST_CASE("is_r_ample on small fixtures") {
  auto v = is_r_ample(fixtures::full_triangle(), 1);
  CHECK_FALSE(v.ample);
  REQUIRE(v.counterexample.has_value());
  CHECK(v.counterexample->u == std::vector<Vertex>{0});
  CHECK(v.counterexample->a.empty());
  CHECK_FALSE(ample_witness(fixtures::full_triangle(), v.counterexample->u, v.counterexample->a));

  CHECK(is_r_ample(fixtures::four_cycle(), 1).ample);
  CHECK_FALSE(is_r_ample(fixtures::four_cycle(), 2).ample);
  CHECK(is_r_ample(five_cycle(), 1).ample);

  CHECK_THROWS_AS(is_r_ample(fixtures::four_cycle(), 0), Error);
  try {
    is_r_ample(fixtures::four_cycle(), 5);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
  AmpleOptions forced;
  forced.force = true;
  CHECK_FALSE(is_r_ample(fixtures::four_cycle(), 5, forced).ample);
  CHECK_FALSE(is_r_ample(SimplicialComplex{}, 1).ample);
}

TEST_CASE("witness table lists the least witness of every pair") {
  AmpleOptions opts;
  opts.witness_table = true;
  const auto v = is_r_ample(fixtures::four_cycle(), 1, opts);
  REQUIRE(v.ample);
  // U = {} gives 1 pair, each of the 4 singletons gives 2.
  CHECK(v.witness_table.size() == 9);
  for (const auto& e : v.witness_table)
    CHECK(ample_witness(fixtures::four_cycle(), e.u, e.a) == e.witness);
}

TEST_CASE("is_r_conic and max_conicity") {
  CHECK(is_r_conic(fixtures::four_cycle(), 3).conic);
  auto c = is_r_conic(fixtures::four_cycle(), 4);
  CHECK_FALSE(c.conic);
  REQUIRE(c.counterexample.has_value());
  CHECK(*c.counterexample == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(is_r_conic(fixtures::octahedron(), 5).conic);
  CHECK_FALSE(is_r_conic(fixtures::octahedron(), 6).conic);
  CHECK(max_conicity(fixtures::octahedron(), 7) == 5);
  CHECK(max_conicity(SimplicialComplex{}, 3) == -1);
  CHECK_FALSE(is_r_conic(SimplicialComplex{}, 0).conic);
  CHECK(is_r_conic(from({{0}}), 0).conic);
  CHECK(max_ampleness(fixtures::full_triangle(), 3) == 0);
  CHECK(max_ampleness(fixtures::four_cycle(), 3) == 1);
}

TEST_CASE("stars_intersection") {
  const auto oct = fixtures::octahedron();
  const std::vector<Vertex> antipodal{0, 1};
  CHECK(is_isomorphic(stars_intersection(oct, antipodal), fixtures::four_cycle()).has_value());
  CHECK(stars_intersection(oct, std::vector<Vertex>{3}) == closed_star(oct, 3));
  CHECK(stars_intersection(fixtures::four_cycle(), std::vector<Vertex>{0, 1}) == from({{0, 1}}));
  CHECK_THROWS_AS(stars_intersection(oct, std::vector<Vertex>{9}), Error);
}

TEST_CASE("extend_embedding") {
  const auto oct = fixtures::octahedron();
  auto f = extend_embedding(oct, from({{0}}), std::vector<Vertex>{}, {});
  REQUIRE(f.has_value());
  CHECK(*f == VertexMap{{0, 0}});

  // Edge a-b with a placed anywhere in the 1-ample 5-cycle.
  const auto edge = from({{0, 1}});
  const auto x = five_cycle();
  auto g = extend_embedding(x, edge, std::vector<Vertex>{0}, {{0, 3}});
  REQUIRE(g.has_value());
  CHECK(is_embedding(edge, x, *g));
  CHECK((*g)[1].second == 2);

  const auto path = from({{0, 1}, {1, 2}});
  CHECK_FALSE(extend_embedding(fixtures::hollow_triangle(), fixtures::full_triangle(),
                               std::vector<Vertex>{0, 1}, {{0, 0}, {1, 1}})
                  .has_value());
  try {
    extend_embedding(fixtures::four_cycle(), path, std::vector<Vertex>{0, 2}, {{0, 0}, {2, 1}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidEmbedding);
  }
}

TEST_CASE("property: mask engine agrees with the definition and the extension property") {
  std::mt19937_64 rng(2024);
  int ample1 = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto x = random_small(rng);
    for (int r = 1; r <= 2; ++r) {
      const auto v = is_r_ample(x, r);
      assert_vertex_bound(x, r, v);
      CHECK(v.ample == ample_by_definition(x, r));
      CHECK(v.ample == extension_property(x, r));
      if (!v.ample) {
        REQUIRE(v.counterexample.has_value());
        CHECK_FALSE(ample_witness(x, v.counterexample->u, v.counterexample->a).has_value());
      }
      ample1 += (r == 1 && v.ample);
    }
  }
  // The sample must exercise the positive branch too.
  CHECK(ample1 > 0);
  CHECK(extension_property(five_cycle(), 1));
}

TEST_CASE("property: ample implies conic, monotone sweeps, link heredity, stars lemma") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const auto x = random_small(rng);
    bool prev_ample = true, prev_conic = true;
    for (int r = 1; r <= 4; ++r) {
      const auto a = is_r_ample(x, r);
      const auto c = is_r_conic(x, r);
      assert_vertex_bound(x, r, a);
      if (a.ample) CHECK(c.conic);
      if (!prev_ample) CHECK_FALSE(a.ample);
      if (!prev_conic) CHECK_FALSE(c.conic);
      prev_ample = a.ample;
      prev_conic = c.conic;
      if (!c.conic) {
        const auto xu = induced(x, *c.counterexample);
        for (Vertex v : x.vertices()) CHECK_FALSE(is_subcomplex(xu, closed_star(x, v)));
      }
      if (a.ample && r >= 2 && r <= 3)
        for (Vertex v : x.vertices()) CHECK(is_r_ample(link(x, Simplex{v}), r - 1).ample);
    }
    const int k = max_conicity(x, 4);
    for (int t = 1; t <= k; ++t) {
      std::vector<Vertex> vs(x.vertices().begin(), x.vertices().begin() + std::min<std::size_t>(t, x.vertex_count()));
      if (static_cast<int>(vs.size()) < t) break;
      const auto s = stars_intersection(x, vs);
      CHECK_FALSE(s.empty());
      CHECK(is_r_conic(s, k - t).conic);
    }
  }
}

TEST_CASE("property: link heredity and stars lemma on conic spheres") {
  const auto oct = fixtures::octahedron();
  const std::vector<std::vector<Vertex>> picks{{0}, {0, 2}, {0, 2, 4}, {0, 1}, {0, 1, 2, 3}};
  for (const auto& vs : picks) {
    const int t = static_cast<int>(vs.size());
    CHECK(is_r_conic(stars_intersection(oct, vs), 5 - t).conic);
  }
}

TEST_CASE("multi-thread verdicts match the sequential ones") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = fixtures::random_complex(rng, 9, 8, 3);
    for (int r = 1; r <= 3; ++r) {
      AmpleOptions par;
      par.threads = 4;
      const auto a = is_r_ample(x, r);
      const auto b = is_r_ample(x, r, par);
      CHECK(a.ample == b.ample);
      if (a.counterexample && b.counterexample) {
        CHECK(a.counterexample->u == b.counterexample->u);
        CHECK(a.counterexample->a == b.counterexample->a);
      }
      const auto c = is_r_conic(x, r);
      const auto d = is_r_conic(x, r, par);
      CHECK(c.conic == d.conic);
      CHECK(c.counterexample == d.counterexample);
    }
  }
}
