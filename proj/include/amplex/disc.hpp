#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "amplex/complex.hpp"

namespace amplex {

/// A triangulated disc mapped simplicially into a complex. Disc vertices
/// 0..n-1 are the boundary positions in loop order; later ids are internal.
struct FilledDisc {
  int r = 0;
  std::vector<Vertex> boundary;
  /// Disc vertex -> vertex of the target complex.
  std::vector<Vertex> image;
  std::vector<std::array<std::uint32_t, 3>> disc_triangles;

  std::size_t boundary_length() const { return boundary.size(); }
  std::size_t internal_vertex_count() const { return image.size() - boundary.size(); }
  std::size_t triangle_count() const { return disc_triangles.size(); }
  /// Triangles as vertex triples of the target.
  std::vector<std::array<Vertex, 3>> triangles() const;

  /// ⌈(n-3)/(r-3)⌉ and ⌈(n-3)/(r-3)⌉(r-1)+1.
  std::size_t internal_bound() const;
  std::size_t triangle_bound() const;
};

struct DiscCertificate {
  bool valid = false;
  bool within_bounds = false;
  std::string failure;
};

/// Checks the disc combinatorics (boundary edges in one triangle, other edges
/// in two, χ = 1, connected, vertex links are paths or cycles), that every
/// triangle maps onto a simplex of `x`, and both size bounds.
DiscCertificate validate_disc(const FilledDisc& disc, const SimplicialComplex& x);

/// Answers a witness request (U, A), or nullopt when none exists.
using WitnessSource =
    std::function<std::optional<Vertex>(std::span<const Vertex>, const SimplicialComplex&)>;

/// Arc-shortening disc filling of a closed edge loop (consecutive entries and
/// the last/first pair must be edges). Requires r >= 4 and length >= 3. A
/// missing witness raises NotAmpleEnough naming the failing (U, A).
FilledDisc fill_loop(const SimplicialComplex& x, std::span<const Vertex> loop, int r);
/// Same with witnesses from `source`; `current` returns the complex the
/// source answers for (it may grow between requests).
FilledDisc fill_loop(const std::function<const SimplicialComplex&()>& current,
                     const WitnessSource& source, std::span<const Vertex> loop, int r);

nlohmann::json to_json(const FilledDisc& disc);
/// One "a b" line per disc edge, in target vertex ids, sorted and unique.
std::string to_edge_list(const FilledDisc& disc);

}  // namespace amplex
