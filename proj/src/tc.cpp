#include "amplex/tc.hpp"

#include <cmath>

#include "amplex/error.hpp"

namespace amplex {

std::int64_t tc_upper_bound(std::int64_t dim, std::int64_t conn) {
  if (dim < 0 || conn < 0) throw Error(ErrorKind::InvalidParameters, "dim and conn must be non-negative");
  return (2 * dim) / (conn + 1);
}

MedialTcBound medial_tc_calculator(double L, double epsilon) {
  if (!(L > 8)) throw Error(ErrorKind::OutOfRegime, "medial_tc_calculator needs L > 8");
  if (!(epsilon >= 0)) throw Error(ErrorKind::InvalidParameters, "epsilon must be non-negative");
  MedialTcBound out;
  out.L = L;
  out.epsilon = epsilon;
  out.beta = L + std::log2(L + std::log2(std::log(2.0)));
  out.dim_bound = static_cast<std::int64_t>(std::floor(out.beta - 1 + epsilon));
  out.conn_bound = static_cast<std::int64_t>(std::floor(L / 2 - 3));
  out.tc_bound = tc_upper_bound(out.dim_bound, out.conn_bound);
  return out;
}

}  // namespace amplex
