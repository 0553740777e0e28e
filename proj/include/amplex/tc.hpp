#pragma once

#include <cstdint>

namespace amplex {

/// Largest integer strictly below (2 dim + 1)/(conn + 1), i.e. ⌊2 dim/(conn + 1)⌋.
std::int64_t tc_upper_bound(std::int64_t dim, std::int64_t conn);

struct MedialTcBound {
  double L = 0;
  double epsilon = 1.0;
  /// β = L + log2(L + log2 ln 2), with L = log2 log2 n.
  double beta = 0;
  std::int64_t dim_bound = 0;
  std::int64_t conn_bound = 0;
  std::int64_t tc_bound = 0;
};

/// Evaluates dim ≤ ⌊β - 1 + ε⌋ and conn = ⌊L/2 - 3⌋ for the medial regime and
/// feeds them to tc_upper_bound. Throws OutOfRegime for L <= 8.
MedialTcBound medial_tc_calculator(double L, double epsilon = 1.0);

}  // namespace amplex
