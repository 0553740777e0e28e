#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "amplex/bitset.hpp"
#include "amplex/simplex.hpp"

namespace amplex {

/// A finite, downward-closed family of simplexes.
///
/// Every face of every stored simplex is stored, at all dimensions. The
/// complex is immutable once built and may be shared across threads.
/// Alongside the simplex levels it keeps a hash index for membership and a
/// per-vertex adjacency bitset (the 1-skeleton).
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Downward closure of the given simplexes.
  static SimplicialComplex from_maximal(std::span<const Simplex> maximal);
  static SimplicialComplex from_maximal(const std::vector<std::vector<Vertex>>& maximal);
  /// Adopts a family that must already be downward closed (validated).
  static SimplicialComplex from_closed(std::vector<Simplex> simplexes);

  bool empty() const noexcept { return vertices_.empty(); }
  int dim() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t simplex_count() const noexcept { return index_.size(); }
  /// One past the largest vertex id (0 for the empty complex).
  std::size_t id_bound() const noexcept { return adjacency_.size(); }

  /// Sorted vertex ids.
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const VertexBitset& vertex_mask() const noexcept { return vertex_mask_; }
  bool has_vertex(Vertex v) const noexcept { return vertex_mask_.test(v); }

  bool contains(const Simplex& s) const { return index_.find(s) != index_.end(); }
  /// `vs` must be sorted ascending.
  bool contains(std::span<const Vertex> vs) const { return index_.find(vs) != index_.end(); }

  /// Simplexes of dimension d in lexicographic order (empty if d > dim()).
  const std::vector<Simplex>& level(int d) const;
  /// All simplexes in canonical order (dimension, then lexicographic).
  std::vector<Simplex> simplexes() const;
  template <class F>
  void for_each_simplex(F&& f) const {
    for (const auto& lvl : levels_)
      for (const auto& s : lvl) f(s);
  }

  /// Neighbours of v in the 1-skeleton.
  const VertexBitset& neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).count(); }
  /// Number of simplexes that contain v.
  std::size_t star_size(Vertex v) const;

  std::vector<Simplex> maximal_simplexes() const;
  std::vector<std::size_t> f_vector() const;
  std::int64_t euler_characteristic() const;

  /// Index of s within level(s.dim()); throws AbsentSimplex.
  std::size_t index_in_level(const Simplex& s) const;

  /// Every face of every simplex is present and 0-simplexes match the
  /// vertex set. Always true for complexes built through this class; exposed
  /// so tests can assert it on every output.
  bool is_closed() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.levels_ == b.levels_;
  }

 private:
  void build_from_closed_set(std::unordered_set<Simplex, SimplexHash, SimplexEqual> set);

  std::vector<Vertex> vertices_;
  VertexBitset vertex_mask_;
  std::vector<std::vector<Simplex>> levels_;
  std::unordered_set<Simplex, SimplexHash, SimplexEqual> index_;
  std::vector<VertexBitset> adjacency_;
  std::vector<std::uint32_t> star_sizes_;
};

/// The ambient simplex relative to which external simplexes are counted.
struct AmbientContext {
  std::vector<Vertex> ambient_vertices;  // sorted

  static AmbientContext standard(std::size_t n);
  /// Throws AbsentVertex unless V(X) is contained in the ambient set.
  void validate(const SimplicialComplex& x) const;
};

// --- set-level operations -------------------------------------------------

SimplicialComplex link(const SimplicialComplex& x, const Simplex& sigma);
SimplicialComplex closed_star(const SimplicialComplex& x, Vertex v);
SimplicialComplex induced(const SimplicialComplex& x, std::span<const Vertex> u);
SimplicialComplex join(const SimplicialComplex& x, const SimplicialComplex& y);
SimplicialComplex cone(Vertex apex, const SimplicialComplex& base);
/// Relabels every vertex v as v + offset (used to make join operands disjoint).
SimplicialComplex shift_vertices(const SimplicialComplex& x, Vertex offset);

/// Adds a fresh apex over each base: X ∪ ⋃ (apex_i ⊛ base_i). Apexes must be
/// new ids; bases must be subcomplexes of X.
SimplicialComplex attach_cones(const SimplicialComplex& x,
                               std::span<const std::pair<Vertex, SimplicialComplex>> cones);

std::vector<Simplex> external_simplexes(const SimplicialComplex& x, const AmbientContext& ctx,
                                        int max_dim);
/// |E(X | ambient)| without materializing the list.
std::size_t count_external_simplexes(const SimplicialComplex& x, const AmbientContext& ctx,
                                     int max_dim);

/// True when every simplex of `sub` is a simplex of `x`.
bool is_subcomplex(const SimplicialComplex& sub, const SimplicialComplex& x);

/// Visits every subcomplex (downward-closed subfamily, empty one included)
/// exactly once. Order: depth-first over the canonical simplex order with
/// "exclude" explored before "include", so the empty complex comes first.
/// The visitor returns false to stop early. Returns the number visited.
std::uint64_t enumerate_subcomplexes(
    const SimplicialComplex& x, const std::function<bool(const SimplicialComplex&)>& visit);
/// Same traversal restricted to subcomplexes with at most `max_vertices`
/// vertices.
std::uint64_t enumerate_subcomplexes(
    const SimplicialComplex& x, std::size_t max_vertices,
    const std::function<bool(const SimplicialComplex&)>& visit);
std::uint64_t count_subcomplexes(const SimplicialComplex& x, std::uint64_t stop_after = UINT64_MAX);

std::vector<std::size_t> f_vector(const SimplicialComplex& x);
std::int64_t euler_characteristic(const SimplicialComplex& x);

/// Vertex bijection X -> Y (pairs sorted by X vertex) preserving simplexes in
/// both directions, or nullopt. Throws ResourceLimit above `max_vertices`.
std::optional<std::vector<std::pair<Vertex, Vertex>>> is_isomorphic(
    const SimplicialComplex& x, const SimplicialComplex& y, std::size_t max_vertices = 20);

/// Named fixtures used across tests and the CLI.
SimplicialComplex full_simplex(std::span<const Vertex> vs);
SimplicialComplex full_simplex(std::size_t k);
SimplicialComplex cycle_graph(std::size_t k);
SimplicialComplex path_graph(std::span<const Vertex> vs);

}  // namespace amplex
