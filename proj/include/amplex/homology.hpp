#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "amplex/complex.hpp"

namespace amplex {

using BigInt = boost::multiprecision::cpp_int;

enum class Field { GF2, Rationals };
const char* to_string(Field f);

/// Sparse boundary matrix ∂_d: columns are d-simplexes, rows (d-1)-simplexes,
/// both in level order. Entry (-1)^i for the facet missing vertex i.
struct BoundaryMatrix {
  std::size_t rows = 0;
  /// Per column: (row, coefficient) sorted by row.
  std::vector<std::vector<std::pair<std::uint32_t, int>>> columns;
};

BoundaryMatrix boundary_matrix(const SimplicialComplex& x, int d);

struct BettiReport {
  Field field = Field::Rationals;
  /// Unreduced Betti numbers b_0..b_dim.
  std::vector<std::int64_t> betti;
  /// Reduced numbers; b~_0 = b_0 - 1 for a non-empty complex.
  std::vector<std::int64_t> reduced() const;
};

BettiReport betti_numbers(const SimplicialComplex& x, Field field);

/// Rank routines, exposed for cross-checking.
namespace linalg {
std::size_t rank_gf2_sparse(const BoundaryMatrix& m);
std::size_t rank_gf2_dense(const BoundaryMatrix& m);
std::size_t rank_gf2(const BoundaryMatrix& m);
std::size_t rank_rationals(const BoundaryMatrix& m);
/// Invariant factors (non-zero diagonal of the Smith normal form), ascending.
std::vector<BigInt> smith_invariants(const BoundaryMatrix& m);
}  // namespace linalg

inline constexpr std::size_t kTorsionGuard = 5000;

/// Torsion coefficients of H_d(X; Z) for d = 0..dim: the invariant factors
/// greater than one of ∂_{d+1}. Throws ResourceLimit above `guard` simplexes.
std::vector<std::vector<BigInt>> integral_torsion(const SimplicialComplex& x,
                                                  std::size_t guard = kTorsionGuard);

struct CycleSurvival {
  bool rationals = false;
  bool gf2 = false;
};

/// Whether the fundamental d-cycle of `sub` is non-bounding in `x` (reduced
/// homology). The cycle is the ±1 chain on the top simplexes of `sub` with
/// zero boundary; InvalidInput if none exists or `sub` is not a subcomplex.
CycleSurvival cycle_survives(const SimplicialComplex& sub, const SimplicialComplex& x, int d);

struct ConnectivityReport {
  BettiReport gf2;
  BettiReport rationals;
  /// Largest k with reduced b_i = 0 for i <= k (-2 for the empty complex,
  /// -1 when disconnected), per field and the minimum of both.
  int connectivity_gf2 = -2;
  int connectivity_rationals = -2;
  int homological_connectivity = -2;
  /// Fundamental cycles of a spanning tree filled by discs.
  bool simply_connected_certified = false;
  std::size_t loops_filled = 0;
  /// Set whenever the evidence for π_1 is homological only.
  bool homological_only = true;
  std::string caveat;
};

ConnectivityReport connectivity_report(const SimplicialComplex& x,
                                       std::optional<int> verified_ample_r = std::nullopt);

}  // namespace amplex
