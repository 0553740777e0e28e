#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amplex/ampleness.hpp"
#include "amplex/complex.hpp"

namespace amplex {

// --- iterated Paley complexes over prime fields ---------------------------

struct PrimeFieldSpec {
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  /// Primitive element; the least primitive root when absent.
  std::optional<std::uint64_t> g;
};

struct PaleyResidueSet {
  std::uint64_t q = 0, p = 0, g = 0;
  /// dlog[x] for 1 <= x < q; dlog[0] is unused.
  std::vector<std::uint32_t> dlog;
  /// qr[a] for 0 <= a < p: a is a square mod p (0 included).
  std::vector<char> qr;
  /// Q in increasing order.
  std::vector<std::uint64_t> elements;

  bool contains(std::uint64_t x) const { return x % q != 0 && qr[dlog[x % q] % p]; }
  std::size_t size() const { return elements.size(); }
};

bool is_prime(std::uint64_t n);
std::uint64_t least_primitive_root(std::uint64_t q);

/// Largest q accepted (the discrete-log table is dense).
inline constexpr std::uint64_t kPaleyMaxQ = 1'000'000;

PaleyResidueSet paley_residues(const PrimeFieldSpec& spec);
SimplicialComplex paley_complex(const PaleyResidueSet& res, int max_dim);
SimplicialComplex paley_complex(const PrimeFieldSpec& spec, int max_dim);
/// Exact check of p > 2^(2^r + 2r) and n > r^2 p^(2r).
bool paley_parameter_check(int r, std::uint64_t p, std::uint64_t n);

// --- medial regime ---------------------------------------------------------

struct MedialSample {
  SimplicialComplex complex;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  /// P(complex) = 2^-h.
  std::uint64_t h = 0;
};

inline constexpr std::size_t kMedialMaxN = 1U << 14;

/// Every candidate simplex (boundary present) is kept with probability 1/2,
/// level by level. `max_dim` truncates the process.
MedialSample medial_sample(std::size_t n, std::uint64_t seed, std::optional<int> max_dim = {});
/// H(X) = |F(X)| + |E(X | Δ_n)|, externals up to dimension dim X + 1.
std::uint64_t medial_probability(const SimplicialComplex& x, std::size_t n);
/// n^r 2^(2^r) (1 - 2^(-2^r))^(n-r); may exceed 1 or be +inf.
double ampleness_failure_bound(std::uint64_t n, int r);
double ampleness_failure_log_bound(std::uint64_t n, int r);

// --- towers -----------------------------------------------------------------

struct TowerStage {
  int stage = 0;
  SimplicialComplex complex;
  std::size_t parent_vertex_count = 0;
  /// New vertex -> the subcomplex it cones over.
  std::vector<std::pair<Vertex, SimplicialComplex>> label_map;
};

struct TowerResult {
  std::vector<TowerStage> stages;
  /// False when the vertex budget stopped the construction early.
  bool complete = true;
  std::size_t budget = 0;
};

inline constexpr std::size_t kDefaultTowerBudget = 100000;

/// X_0 = point; X_{k+1} cones every subcomplex of X_k, the empty one included.
TowerResult rado_tower(int levels, std::size_t budget = kDefaultTowerBudget);
/// K_0 = (n+1)-fold join of S^0; each iteration cones every subcomplex with
/// at most 2n+1 vertices (non-empty unless `include_empty`).
TowerResult barmak_tower(int n, int iterations, std::size_t budget = kDefaultTowerBudget,
                         bool include_empty = false);

/// Finite piece of the Rado complex grown on demand. Starts from a tower
/// stage; a witness request that the current piece cannot answer attaches
/// the cone vertex v(A) of the next stage. The piece is always an induced
/// subcomplex of the infinite tower, so answers agree with it.
class LazyRadoComplex {
 public:
  explicit LazyRadoComplex(int base_stage = 2);

  const SimplicialComplex& complex() const { return x_; }
  int stage_of(Vertex v) const { return stage_.at(v); }
  std::size_t attached() const { return attached_; }

  /// Least existing witness for (U, A), else a freshly attached cone vertex.
  Vertex witness(std::span<const Vertex> u, const SimplicialComplex& a);

 private:
  SimplicialComplex x_;
  std::vector<int> stage_;
  std::size_t attached_ = 0;
};

// --- fixtures ---------------------------------------------------------------

/// 13 vertices, edges i~j iff i-j = ±1, ±3, ±4 mod 13, triangles {i, i+1, i+4}.
SimplicialComplex example_thirteen();
/// k-fold join of S^0 on vertices 0..2k-1 (pair i is {2i, 2i+1}).
SimplicialComplex sphere_join(std::size_t k);

// --- probabilistic search ---------------------------------------------------

struct SearchResult {
  std::optional<SimplicialComplex> complex;
  std::uint64_t trials_used = 0;
  /// Seed of the successful sample.
  std::optional<std::uint64_t> seed;
};

/// Draws medial samples with seeds seed, seed+1, ... and returns the first
/// r-ample one in trial order. `opts.threads` parallelizes over trials.
SearchResult search_ample(std::size_t n, int r, std::uint64_t trials, std::uint64_t seed,
                          const AmpleOptions& opts = {});

}  // namespace amplex
