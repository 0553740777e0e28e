#include <doctest.h>

#include <climits>

#include "amplex/constructions.hpp"
#include "amplex/disc.hpp"
#include "amplex/error.hpp"
#include "amplex/homology.hpp"
#include "amplex/rng.hpp"
#include "amplex/tc.hpp"
#include "fixtures.hpp"

using namespace amplex;
using fixtures::from;

namespace {

std::vector<std::int64_t> B(std::initializer_list<std::int64_t> v) { return v; }

// Bareiss determinant, independent of the Smith routine.
BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BoundaryMatrix dense_to_sparse(const std::vector<std::vector<int>>& a) {
  BoundaryMatrix m;
  m.rows = a.size();
  m.columns.resize(a.empty() ? 0 : a[0].size());
  for (std::size_t j = 0; j < m.columns.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i][j] != 0) m.columns[j].emplace_back(static_cast<std::uint32_t>(i), a[i][j]);
  return m;
}

// Closed walk of length n in the lazily grown Rado piece.
std::vector<Vertex> random_loop(LazyRadoComplex& lazy, Rng& rng, std::size_t n) {
  const auto& x0 = lazy.complex();
  std::vector<Vertex> walk{x0.vertices()[rng.below(x0.vertex_count())]};
  while (walk.size() + 1 < n) {
    const auto& x = lazy.complex();
    std::vector<Vertex> nb;
    x.neighbors(walk.back()).for_each([&](std::size_t w) { nb.push_back(static_cast<Vertex>(w)); });
    if (nb.empty()) {
      const auto v = walk.back();
      nb.push_back(lazy.witness(std::vector<Vertex>{v}, from({{v}})));
    }
    walk.push_back(nb[rng.below(nb.size())]);
  }
  std::vector<Vertex> u{walk.front(), walk.back()};
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  std::vector<std::vector<Vertex>> pts;
  for (auto v : u) pts.push_back({v});
  walk.push_back(lazy.witness(u, from(pts)));
  return walk;
}

}  // namespace

TEST_CASE("boundary of a boundary vanishes") {
  std::mt19937_64 gen(4);
  std::vector<SimplicialComplex> xs{fixtures::octahedron(), example_thirteen(), fixtures::projective_plane(),
                                    full_simplex(5)};
  for (int i = 0; i < 20; ++i) xs.push_back(fixtures::random_complex(gen, 8, 6, 5));
  for (const auto& x : xs) {
    for (int d = 2; d <= x.dim(); ++d) {
      const auto hi = boundary_matrix(x, d);
      const auto lo = boundary_matrix(x, d - 1);
      for (const auto& col : hi.columns) {
        std::map<std::uint32_t, long> acc;
        for (auto [r, v] : col)
          for (auto [rr, w] : lo.columns[r]) acc[rr] += static_cast<long>(v) * w;
        for (auto [rr, s] : acc) CHECK(s == 0);
      }
    }
  }
}

TEST_CASE("Betti numbers of fixtures") {
  for (auto f : {Field::GF2, Field::Rationals}) {
    CHECK(betti_numbers(example_thirteen(), f).betti == B({1, 14, 0}));
    CHECK(betti_numbers(fixtures::octahedron(), f).betti == B({1, 0, 1}));
    CHECK(betti_numbers(fixtures::four_cycle(), f).betti == B({1, 1}));
    CHECK(betti_numbers(full_simplex(4), f).reduced() == B({0, 0, 0, 0}));
    CHECK(betti_numbers(SimplicialComplex{}, f).betti.empty());
  }
  CHECK(betti_numbers(fixtures::projective_plane(), Field::GF2).betti == B({1, 1, 1}));
  CHECK(betti_numbers(fixtures::projective_plane(), Field::Rationals).betti == B({1, 0, 0}));
  CHECK(betti_numbers(fixtures::s0(0, 5), Field::Rationals).reduced() == B({1}));
}

TEST_CASE("rank routines agree") {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 60; ++i) {
    const auto x = fixtures::random_complex(gen, 9, 10, 5);
    for (int d = 1; d <= x.dim(); ++d) {
      const auto m = boundary_matrix(x, d);
      CHECK(linalg::rank_gf2_dense(m) == linalg::rank_gf2_sparse(m));
      CHECK(linalg::rank_rationals(m) >= linalg::rank_gf2(m));
    }
    std::int64_t alt = 0, sign = 1;
    for (auto b : betti_numbers(x, Field::Rationals).betti) {
      alt += sign * b;
      sign = -sign;
    }
    CHECK(alt == x.euler_characteristic());
  }
}

TEST_CASE("rational rank survives coefficient growth") {
  Rng rng(3);
  std::vector<std::vector<int>> a(30, std::vector<int>(30));
  for (auto& row : a)
    for (auto& v : row) v = static_cast<int>(rng.between(-1000000, 1000000));
  CHECK(linalg::rank_rationals(dense_to_sparse(a)) == 30);
  for (auto& row : a) row[29] = row[0] * 2 - row[1];
  CHECK(linalg::rank_rationals(dense_to_sparse(a)) == 29);
}

TEST_CASE("Smith invariants multiply to the determinant") {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<std::vector<int>> a(n, std::vector<int>(n));
    std::vector<std::vector<BigInt>> big(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) big[i][j] = a[i][j] = static_cast<int>(rng.between(-4, 4));
    const auto inv = linalg::smith_invariants(dense_to_sparse(a));
    BigInt det = bareiss_det(big);
    if (det < 0) det = -det;
    if (det == 0) {
      CHECK(inv.size() < n);
    } else {
      REQUIRE(inv.size() == n);
      BigInt prod = 1;
      for (std::size_t i = 0; i < inv.size(); ++i) {
        prod *= inv[i];
        if (i > 0) CHECK(inv[i] % inv[i - 1] == 0);
      }
      CHECK(prod == det);
    }
  }
  CHECK(linalg::smith_invariants(dense_to_sparse({{2, 0}, {0, 3}})) == std::vector<BigInt>{1, 6});
  CHECK(linalg::smith_invariants(dense_to_sparse({{2, 4}, {4, 2}})) == std::vector<BigInt>{2, 6});
}

TEST_CASE("integral torsion") {
  auto t = integral_torsion(fixtures::projective_plane());
  REQUIRE(t.size() == 3);
  CHECK(t[0].empty());
  CHECK(t[1] == std::vector<BigInt>{2});
  CHECK(t[2].empty());
  for (const auto& v : integral_torsion(fixtures::octahedron())) CHECK(v.empty());
  for (const auto& v : integral_torsion(example_thirteen())) CHECK(v.empty());
  try {
    integral_torsion(full_simplex(13));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
}

TEST_CASE("cycle_survives") {
  const auto tower = barmak_tower(1, 1);
  const auto& k0 = tower.stages[0].complex;
  const auto& k1 = tower.stages[1].complex;
  auto s = cycle_survives(k0, k1, 1);
  CHECK(s.rationals);
  CHECK(s.gf2);
  const auto c = cone(9, fixtures::four_cycle());
  s = cycle_survives(fixtures::four_cycle(), c, 1);
  CHECK_FALSE(s.rationals);
  CHECK_FALSE(s.gf2);
  s = cycle_survives(fixtures::octahedron(), fixtures::octahedron(), 2);
  CHECK(s.rationals);
  CHECK(s.gf2);
  CHECK_FALSE(cycle_survives(fixtures::hollow_triangle(), fixtures::full_triangle(), 1).rationals);
  CHECK_FALSE(cycle_survives(fixtures::s0(0, 2), from({{0, 1}, {1, 2}}), 0).rationals);
  CHECK(cycle_survives(fixtures::s0(0, 2), fixtures::s0(0, 2), 0).gf2);
  CHECK_THROWS_AS(cycle_survives(fixtures::four_cycle(), fixtures::full_triangle(), 1), Error);
  CHECK_THROWS_AS(cycle_survives(from({{0, 1}, {1, 2}}), full_simplex(3), 1), Error);
}

TEST_CASE("connectivity reports") {
  const auto oct = connectivity_report(fixtures::octahedron());
  CHECK(oct.homological_connectivity == 1);
  CHECK(oct.rationals.betti[2] == 1);
  CHECK(oct.homological_only);
  const auto e13 = connectivity_report(example_thirteen(), 2);
  CHECK(e13.homological_connectivity == 0);
  CHECK(e13.rationals.betti[1] == 14);
  CHECK_FALSE(e13.simply_connected_certified);
  CHECK(connectivity_report(fixtures::four_cycle()).homological_connectivity == 0);
  CHECK(connectivity_report(SimplicialComplex{}).homological_connectivity == -2);
  CHECK(connectivity_report(fixtures::s0(0, 1)).homological_connectivity == -1);
  CHECK(connectivity_report(full_simplex(3)).homological_connectivity == INT_MAX);
  CHECK_FALSE(oct.caveat.empty());
}

TEST_CASE("conic complexes are homologically connected (randomized)") {
  std::mt19937_64 gen(12);
  int tested = 0;
  for (int i = 0; i < 120; ++i) {
    auto x = fixtures::random_complex(gen, 7, 4 + static_cast<int>(i % 5), 4);
    if (i % 3 == 0) x = join(x, shift_vertices(fixtures::random_complex(gen, 3, 2, 2), 7));
    const int r = max_conicity(x, 5);
    const int k = r / 2 - 1;
    if (k < 0) continue;
    ++tested;
    for (auto f : {Field::GF2, Field::Rationals}) {
      const auto red = betti_numbers(x, f).reduced();
      for (int j = 0; j <= k && j < static_cast<int>(red.size()); ++j) CHECK(red[static_cast<std::size_t>(j)] == 0);
    }
  }
  CHECK(tested > 0);
}

TEST_CASE("sphere joins are sharp") {
  for (int r = 1; r <= 3; ++r) {
    const auto s = sphere_join(static_cast<std::size_t>(r) + 1);
    CHECK(is_r_conic(s, 2 * r + 1).conic);
    CHECK_FALSE(is_r_conic(s, 2 * r + 2).conic);
    CHECK(betti_numbers(s, Field::Rationals).betti[static_cast<std::size_t>(r)] == 1);
  }
}

TEST_CASE("fill_loop bounds on the lazy Rado complex") {
  LazyRadoComplex lazy(2);
  auto current = [&]() -> const SimplicialComplex& { return lazy.complex(); };
  auto source = [&](std::span<const Vertex> u, const SimplicialComplex& a) -> std::optional<Vertex> {
    return lazy.witness(u, a);
  };
  Rng rng(77);
  for (auto [n, r, internal, tris] : std::vector<std::array<std::size_t, 4>>{{5, 5, 1, 5}, {9, 5, 3, 13}, {4, 4, 1, 4}}) {
    const auto loop = random_loop(lazy, rng, n);
    const auto disc = fill_loop(current, source, loop, static_cast<int>(r));
    CHECK(disc.internal_bound() == internal);
    CHECK(disc.triangle_bound() == tris);
    const auto cert = validate_disc(disc, lazy.complex());
    CHECK_MESSAGE(cert.valid, cert.failure);
    CHECK(cert.within_bounds);
  }
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 4 + rng.below(9);
    const int r = 4 + static_cast<int>(rng.below(3));
    const auto loop = random_loop(lazy, rng, n);
    const auto disc = fill_loop(current, source, loop, r);
    const auto cert = validate_disc(disc, lazy.complex());
    CHECK_MESSAGE(cert.valid, cert.failure);
    CHECK(cert.within_bounds);
    CHECK(disc.internal_vertex_count() <= disc.internal_bound());
  }
}

TEST_CASE("fill_loop on fixed complexes") {
  const auto t = full_simplex(3);
  const auto disc = fill_loop(t, std::vector<Vertex>{0, 1, 2}, 4);
  CHECK(disc.internal_vertex_count() == 0);
  CHECK(disc.triangle_count() == 1);
  CHECK(validate_disc(disc, t).within_bounds);

  // The 4-cycle has no vertex outside U to cone it.
  try {
    fill_loop(fixtures::four_cycle(), std::vector<Vertex>{0, 1, 2, 3}, 4);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAmpleEnough);
  }
  const auto c = cone(4, fixtures::four_cycle());
  const auto coned = fill_loop(c, std::vector<Vertex>{0, 1, 2, 3}, 4);
  CHECK(coned.internal_vertex_count() == 1);
  CHECK(validate_disc(coned, c).valid);
  CHECK(to_edge_list(coned) == "0 1\n0 3\n0 4\n1 2\n1 4\n2 3\n2 4\n3 4\n");
  CHECK(to_json(coned)["triangle_count"] == 4);

  CHECK_THROWS_AS(fill_loop(c, std::vector<Vertex>{0, 2, 1, 3}, 4), Error);
  CHECK_THROWS_AS(fill_loop(c, std::vector<Vertex>{0, 1, 2, 3}, 3), Error);

  // A tampered disc fails validation.
  auto bad = coned;
  bad.disc_triangles.pop_back();
  CHECK_FALSE(validate_disc(bad, c).valid);
}

TEST_CASE("tc_upper_bound") {
  CHECK(tc_upper_bound(3, 1) == 3);
  CHECK(tc_upper_bound(2, 0) == 4);
  CHECK(tc_upper_bound(4, 2) == 2);
  for (std::int64_t d = 0; d <= 40; ++d)
    for (std::int64_t c = 0; c <= 40; ++c) {
      const auto t = tc_upper_bound(d, c);
      CHECK(t * (c + 1) < 2 * d + 1);
      CHECK((t + 1) * (c + 1) >= 2 * d + 1);
    }
  CHECK_THROWS_AS(tc_upper_bound(-1, 0), Error);
}

TEST_CASE("medial TC calculator") {
  const auto a = medial_tc_calculator(100);
  CHECK(a.dim_bound == 106);
  CHECK(a.conn_bound == 47);
  CHECK(a.tc_bound == 4);
  const auto b = medial_tc_calculator(40);
  CHECK(b.tc_bound == 5);
  CHECK(medial_tc_calculator(1e6).tc_bound == 4);
  CHECK(medial_tc_calculator(1e9).tc_bound == 4);
  try {
    medial_tc_calculator(8);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRegime);
  }
}
