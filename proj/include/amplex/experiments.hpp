#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amplex/complex.hpp"

namespace amplex {

/// Antichain of simplexes removed together with their upward closure.
class RemovalFamily {
 public:
  RemovalFamily() = default;
  /// Drops every member that has another member as a face.
  explicit RemovalFamily(std::vector<Simplex> simplexes);

  const std::vector<Simplex>& simplexes() const { return s_; }
  std::size_t cardinality() const { return s_.size(); }
  std::size_t total_dimension() const;
  /// |F| + dim F.
  std::size_t weight() const { return cardinality() + total_dimension(); }

 private:
  std::vector<Simplex> s_;
};

SimplicialComplex remove_family(const SimplicialComplex& x, const RemovalFamily& f);

/// r - k for the least k with |F| + dim F < M'(k) + k; absent when r - k < 1.
std::optional<int> resilience_guarantee(int r, const RemovalFamily& f);
/// a0 + 2 a1 < M'(r-2) + r - 2, exact for r - 2 <= 6, else the explicit
/// sufficient form with 2^C(r-2, ⌊r/2⌋-1).
bool connectivity_after_removal_bound(int r, std::uint64_t a0, std::uint64_t a1);

struct RemovalPolicy {
  /// Largest dimension of a removed simplex.
  int max_dim = 1;
  /// Also run a hypothesis-violating family per trial.
  bool control = true;
  /// Control families have weight in [M'(k)+k, M'(k)+k+control_excess].
  int control_excess = 2;
};

struct ExperimentConfig {
  std::string experiment = "resilience";
  /// "medial" (search_ample) or "example13".
  std::string generator = "medial";
  std::uint64_t seed = 1;
  int r = 2;
  int k = 1;
  std::uint64_t trials = 200;
  std::size_t n_min = 58;
  std::size_t n_max = 60;
  std::uint64_t search_trials = 5000;
  RemovalPolicy policy;
  std::vector<std::size_t> n_list{16, 32, 64, 128};
  int parts = 2;
  std::size_t betti_guard = 20000;
  unsigned threads = 1;
  bool record_timings = false;
  std::string output;

  /// Unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct ExperimentReport {
  std::string experiment;
  nlohmann::json config;
  std::vector<std::string> columns;
  /// One object per row, keyed by `columns`.
  std::vector<nlohmann::json> records;
  nlohmann::json aggregate;
  std::string label;

  nlohmann::json to_json() const;
  std::string to_csv() const;
  /// Writes <prefix>.json and <prefix>.csv.
  void write(const std::string& prefix) const;
};

ExperimentReport resilience_experiment(const ExperimentConfig& cfg);

std::size_t witness_census(const SimplicialComplex& x, std::span<const Vertex> u, const SimplicialComplex& a);
/// Mean witness counts in medial samples for U = the one or two smallest
/// vertices and every A ⊆ X_U, per n (exploratory).
ExperimentReport census_experiment(const ExperimentConfig& cfg);

/// Random equipartition of V(X); each part's ampleness and conicity, capped at r.
ExperimentReport partition_experiment(const SimplicialComplex& x, int parts, std::uint64_t seed, int r);

/// Dimension and Betti profile of medial samples against the β(n) window.
ExperimentReport empirical_dimension_and_betti(const std::vector<std::size_t>& n_list, std::uint64_t trials,
                                               std::uint64_t seed, std::size_t betti_guard = 20000,
                                               unsigned threads = 1);

/// β(n) = log2 log2 n + log2 log2 ln n, absent where undefined.
std::optional<double> beta_of(std::size_t n);

}  // namespace amplex
