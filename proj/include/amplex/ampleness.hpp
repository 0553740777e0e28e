#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "amplex/complex.hpp"

namespace amplex {

struct AmpleOptions {
  /// Largest r accepted without `force`.
  int r_cap = 4;
  bool force = false;
  unsigned threads = 1;
  /// Record the least witness of every (U, A) pair (sequential pass).
  bool witness_table = false;
};

struct AmpleCounterexample {
  std::vector<Vertex> u;
  SimplicialComplex a;
};

struct WitnessEntry {
  std::vector<Vertex> u;
  SimplicialComplex a;
  Vertex witness;
};

struct AmpleVerdict {
  bool ample = false;
  int r = 0;
  /// First failing (U, A) in canonical order when not ample.
  std::optional<AmpleCounterexample> counterexample;
  std::vector<WitnessEntry> witness_table;
  double elapsed_seconds = 0.0;
};

struct ConicVerdict {
  bool conic = false;
  int r = 0;
  /// Vertex set U whose induced complex lies in no closed star.
  std::optional<std::vector<Vertex>> counterexample;
  double elapsed_seconds = 0.0;
};

/// Lk_X(v) ∩ X_U: the simplexes σ of X_U with σ ∪ {v} in X.
SimplicialComplex link_restricted(const SimplicialComplex& x, Vertex v, std::span<const Vertex> u);

/// Least vertex v outside U with Lk_X(v) ∩ X_U = A.
std::optional<Vertex> ample_witness(const SimplicialComplex& x, std::span<const Vertex> u,
                                    const SimplicialComplex& a);
/// Number of such vertices.
std::size_t count_witnesses(const SimplicialComplex& x, std::span<const Vertex> u,
                            const SimplicialComplex& a);

AmpleVerdict is_r_ample(const SimplicialComplex& x, int r, const AmpleOptions& opts = {});
/// A complex is r-conic when every induced subcomplex on at most r vertices
/// lies in a closed star. Checking induced subcomplexes suffices: any L with
/// vertex set inside U is contained in X_U, and stars are downward closed.
ConicVerdict is_r_conic(const SimplicialComplex& x, int r, const AmpleOptions& opts = {});

/// Largest r <= r_cap for which X is r-ample (0 if not 1-ample).
int max_ampleness(const SimplicialComplex& x, int r_cap, const AmpleOptions& opts = {});
/// Largest r <= r_cap for which X is r-conic; -1 for the empty complex,
/// which is not even 0-conic.
int max_conicity(const SimplicialComplex& x, int r_cap, const AmpleOptions& opts = {});

using VertexMap = std::vector<std::pair<Vertex, Vertex>>;

/// Extends an embedding of the induced subcomplex A_B into X to all of A,
/// one vertex at a time in ascending id using ample witnesses. `f_b` pairs
/// (vertex of A, vertex of X). Returns the full map sorted by A vertex, or
/// nullopt when some step has no witness.
std::optional<VertexMap> extend_embedding(const SimplicialComplex& x, const SimplicialComplex& a,
                                          std::span<const Vertex> b_vertices, const VertexMap& f_b);

/// True when `f` (A vertex -> X vertex) is injective and an isomorphism of
/// A onto the induced subcomplex of X on its image.
bool is_embedding(const SimplicialComplex& a, const SimplicialComplex& x, const VertexMap& f);

/// M'(r): number of simplicial complexes on r labelled vertices, the empty
/// complex included (the Dedekind number minus one). r <= 6.
std::uint64_t dedekind_reduced(int r);
/// Lower bound on the vertex count of an r-ample complex: M'(r) + r.
std::uint64_t min_vertices_for_ample(int r);

/// Intersection of the closed stars of the given vertices.
SimplicialComplex stars_intersection(const SimplicialComplex& x, std::span<const Vertex> vs);

}  // namespace amplex
