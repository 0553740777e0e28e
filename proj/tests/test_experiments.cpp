#include <doctest.h>

#include <set>

#include "amplex/ampleness.hpp"
#include "amplex/constructions.hpp"
#include "amplex/error.hpp"
#include "amplex/experiments.hpp"
#include "amplex/rng.hpp"
#include "fixtures.hpp"

using namespace amplex;
using fixtures::from;

namespace {

std::set<Simplex> simplex_set(const SimplicialComplex& x) {
  const auto v = x.simplexes();
  return {v.begin(), v.end()};
}

// Upward closure computed the slow way, for the counting identity.
std::size_t upward_closure_size(const SimplicialComplex& x, const RemovalFamily& f) {
  std::size_t n = 0;
  for (const auto& s : x.simplexes()) {
    bool hit = false;
    for (const auto& t : f.simplexes()) hit = hit || t.is_face_of(s);
    n += hit;
  }
  return n;
}

RemovalFamily random_family(const SimplicialComplex& x, Rng& rng, std::size_t count) {
  const auto all = x.simplexes();
  std::vector<Simplex> pick;
  for (std::size_t i = 0; i < count; ++i) pick.push_back(all[rng.below(all.size())]);
  return RemovalFamily(pick);
}

}  // namespace

TEST_CASE("removal family is reduced to an antichain") {
  RemovalFamily f({Simplex{0, 1}, Simplex{0}, Simplex{0, 1, 2}, Simplex{3, 4}, Simplex{3, 4}});
  REQUIRE(f.cardinality() == 2);
  CHECK(f.simplexes()[0] == Simplex{0});
  CHECK(f.simplexes()[1] == Simplex{3, 4});
  CHECK(f.total_dimension() == 1);
  CHECK(f.weight() == 3);
}

TEST_CASE("remove_family examples") {
  const auto y = remove_family(fixtures::full_triangle(), RemovalFamily({Simplex{0, 1}}));
  CHECK(simplex_set(y) == std::set<Simplex>{Simplex{0}, Simplex{1}, Simplex{2}, Simplex{0, 2}, Simplex{1, 2}});

  const auto x = example_thirteen();
  for (Vertex v : {Vertex{0}, Vertex{5}, Vertex{12}}) {
    std::vector<Vertex> rest;
    for (Vertex w : x.vertices())
      if (w != v) rest.push_back(w);
    CHECK(remove_family(x, RemovalFamily({Simplex{v}})) == induced(x, rest));
  }
  CHECK_THROWS_AS(remove_family(fixtures::hollow_triangle(), RemovalFamily({Simplex{0, 1, 2}})), Error);
}

TEST_CASE("remove_family counting and composition") {
  Rng rng(11);
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = fixtures::random_complex(gen, 7, 5, 4);
    const auto f = random_family(x, rng, 1 + rng.below(3));
    const auto y = remove_family(x, f);
    CHECK(y.is_closed());
    CHECK(y.simplex_count() == x.simplex_count() - upward_closure_size(x, f));
    if (y.simplex_count() == 0) continue;
    const auto g = random_family(y, rng, 1 + rng.below(2));
    auto both = f.simplexes();
    both.insert(both.end(), g.simplexes().begin(), g.simplexes().end());
    CHECK(remove_family(y, g) == remove_family(x, RemovalFamily(both)));
  }
}

TEST_CASE("resilience_guarantee examples") {
  CHECK(resilience_guarantee(4, RemovalFamily({Simplex{7}})) == 3);
  CHECK(resilience_guarantee(4, RemovalFamily({Simplex{7, 8}})) == 3);
  // weight 21: seven disjoint triangles
  std::vector<Simplex> tri;
  for (Vertex i = 0; i < 7; ++i) tri.push_back(Simplex{3 * i, 3 * i + 1, 3 * i + 2});
  RemovalFamily f(tri);
  REQUIRE(f.weight() == 21);
  CHECK(resilience_guarantee(5, f) == 2);
  CHECK(resilience_guarantee(3, f) == std::nullopt);
  CHECK(resilience_guarantee(1, RemovalFamily({Simplex{0}})) == std::nullopt);
  CHECK(resilience_guarantee(2, RemovalFamily(std::vector<Simplex>{})) == 2);
  CHECK_THROWS_AS(resilience_guarantee(0, RemovalFamily(std::vector<Simplex>{})), Error);
}

TEST_CASE("resilience_guarantee is monotone under enlarging F") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Simplex> base;
    const auto size = rng.below(8);
    for (std::uint64_t i = 0; i < size; ++i) {
      const auto d = rng.below(4);
      std::vector<Vertex> vs;
      for (std::uint64_t j = 0; j <= d; ++j) vs.push_back(static_cast<Vertex>(10 * i + j));
      base.push_back(Simplex(vs));
    }
    const int r = static_cast<int>(rng.between(1, 6));
    const auto before = resilience_guarantee(r, RemovalFamily(base));
    base.push_back(Simplex{static_cast<Vertex>(500 + trial), static_cast<Vertex>(600 + trial)});
    const auto after = resilience_guarantee(r, RemovalFamily(base));
    CHECK(after.value_or(0) <= before.value_or(0));
  }
}

TEST_CASE("connectivity_after_removal_bound") {
  CHECK(connectivity_after_removal_bound(5, 2, 1));
  CHECK_FALSE(connectivity_after_removal_bound(3, 3, 0));
  CHECK(connectivity_after_removal_bound(3, 2, 0));
  CHECK_FALSE(connectivity_after_removal_bound(4, 7, 0));  // M'(2)+2 = 7
  CHECK(connectivity_after_removal_bound(4, 6, 0));
  // r = 9: explicit form 2^C(7,3) + 7
  const unsigned __int128 cap = (static_cast<unsigned __int128>(1) << 35) + 7;
  CHECK(connectivity_after_removal_bound(9, static_cast<std::uint64_t>(cap - 1), 0));
  CHECK_FALSE(connectivity_after_removal_bound(9, static_cast<std::uint64_t>(cap), 0));
  CHECK_THROWS_AS(connectivity_after_removal_bound(2, 0, 0), Error);
}

TEST_CASE("small resilience runs keep every hypothesis trial ample") {
  ExperimentConfig cfg;
  cfg.generator = "example13";
  cfg.trials = 40;
  cfg.seed = 3;
  const auto rep = resilience_experiment(cfg);
  CHECK(rep.aggregate["hypothesis_records"].get<std::uint64_t>() == 40);
  CHECK(rep.aggregate["hypothesis_pass_rate"].get<double>() == 1.0);
  CHECK(rep.aggregate["control_records"].get<std::uint64_t>() == 40);

  cfg.generator = "medial";
  cfg.trials = 3;
  cfg.search_trials = 3000;
  cfg.threads = 2;
  const auto med = resilience_experiment(cfg);
  const auto hyp = med.aggregate["hypothesis_records"].get<std::uint64_t>();
  CHECK(med.aggregate["hypothesis_passed"].get<std::uint64_t>() == hyp);
  for (const auto& row : med.records)
    if (row["status"] == "ok") CHECK(row["vertices"].get<std::size_t>() >= 7);
}

TEST_CASE("reports are reproducible and configs round-trip") {
  ExperimentConfig cfg;
  cfg.generator = "example13";
  cfg.trials = 12;
  cfg.seed = 77;
  auto j = cfg.to_json();
  const auto back = ExperimentConfig::from_json(j);
  CHECK(back.to_json() == j);
  cfg.threads = 1;
  const auto a = resilience_experiment(cfg);
  cfg.threads = 3;
  auto b = resilience_experiment(cfg);
  b.config = a.config;
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_csv().rfind("trial,arm,n,", 0) == 0);

  j["bogus"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"r", "two"}}), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"policy", {{"x", 1}}}}), Error);
}

TEST_CASE("partition experiment") {
  const auto x = example_thirteen();
  const auto one = partition_experiment(x, 1, 9, 2);
  REQUIRE(one.records.size() == 1);
  CHECK(one.records[0]["ampleness"] == 2);
  CHECK(one.label.find("exploratory") != std::string::npos);
  const auto all = partition_experiment(x, 13, 9, 2);
  CHECK(all.records.size() == 13);
  for (const auto& row : all.records) CHECK(row["ampleness"] == 0);
  CHECK(all.aggregate["max_over_parts_ampleness"] == 0);
  CHECK_THROWS_AS(partition_experiment(x, 0, 1, 2), Error);
  CHECK_THROWS_AS(partition_experiment(x, 14, 1, 2), Error);
  CHECK_THROWS_AS(partition_experiment(fixtures::hollow_triangle(), 1, 1, 1), Error);
}

TEST_CASE("witness census") {
  const auto x = example_thirteen();
  CHECK(witness_census(x, {}, SimplicialComplex{}) == 13);
  const std::vector<Vertex> u{0, 1};
  CHECK(witness_census(x, u, induced(x, u)) >= 1);
  // cross-check against a direct count over all A
  std::size_t total = 0;
  enumerate_subcomplexes(induced(x, u), [&](const SimplicialComplex& a) {
    total += witness_census(x, u, a);
    return true;
  });
  CHECK(total == 11);

  ExperimentConfig cfg;
  cfg.n_list = {16, 32};
  cfg.trials = 3;
  const auto rep = census_experiment(cfg);
  CHECK(!rep.records.empty());
  CHECK(rep.to_json() == census_experiment(cfg).to_json());
}

TEST_CASE("empirical dimension and betti") {
  CHECK(!beta_of(2).has_value());
  const double b16 = *beta_of(std::size_t{1} << 16);
  CHECK(b16 == doctest::Approx(5.79).epsilon(0.01));
  const auto rep = empirical_dimension_and_betti({64, 256}, 4, 2, 20000, 2);
  CHECK(rep.records.size() == 8);
  CHECK(rep.aggregate["per_n"].size() == 2);
  CHECK(rep.to_json() == empirical_dimension_and_betti({64, 256}, 4, 2, 20000, 1).to_json());
}
