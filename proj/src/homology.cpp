#include "amplex/homology.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "amplex/disc.hpp"
#include "amplex/error.hpp"

namespace amplex {

const char* to_string(Field f) { return f == Field::GF2 ? "GF2" : "rationals"; }

BoundaryMatrix boundary_matrix(const SimplicialComplex& x, int d) {
  BoundaryMatrix m;
  if (d < 0) return m;
  const auto& cols = x.level(d);
  m.columns.resize(cols.size());
  if (d == 0) return m;
  m.rows = x.level(d - 1).size();
  std::vector<Vertex> face(static_cast<std::size_t>(d));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& s = cols[c];
    auto& col = m.columns[c];
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) face[k++] = s[j];
      const auto row = x.index_in_level(Simplex::from_sorted(face));
      col.emplace_back(static_cast<std::uint32_t>(row), (i % 2 == 0) ? 1 : -1);
    }
    std::sort(col.begin(), col.end());
  }
  return m;
}

std::vector<std::int64_t> BettiReport::reduced() const {
  auto out = betti;
  if (!out.empty()) out[0] -= 1;
  return out;
}

namespace linalg {

namespace {

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

std::int64_t abs_value(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
  return a < 0 ? -a : a;
}
BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

std::int64_t gcd_value(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
BigInt gcd_value(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

template <class T>
using Column = std::vector<std::pair<std::uint32_t, T>>;

// a*c - b*p over sorted sparse columns.
template <class T>
Column<T> combine(const T& a, const Column<T>& c, const T& b, const Column<T>& p) {
  Column<T> out;
  out.reserve(c.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < c.size() || j < p.size()) {
    if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
      out.emplace_back(c[i].first, checked_mul(a, c[i].second));
      ++i;
    } else if (i == c.size() || p[j].first < c[i].first) {
      out.emplace_back(p[j].first, checked_sub(T(0), checked_mul(b, p[j].second)));
      ++j;
    } else {
      T v = checked_sub(checked_mul(a, c[i].second), checked_mul(b, p[j].second));
      if (v != 0) out.emplace_back(c[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  T g = 0;
  for (const auto& e : out) g = gcd_value(g, abs_value(e.second));
  if (g > 1)
    for (auto& e : out) e.second /= g;
  return out;
}

// Fraction-free column reduction keyed by the lowest row.
template <class T>
std::size_t rank_fraction_free(const BoundaryMatrix& m) {
  std::vector<Column<T>> pivots(m.rows);
  std::vector<char> has(m.rows, 0);
  std::size_t rank = 0;
  for (const auto& src : m.columns) {
    Column<T> col;
    col.reserve(src.size());
    for (auto [r, v] : src) col.emplace_back(r, T(v));
    while (!col.empty()) {
      const auto low = col.back().first;
      if (!has[low]) {
        pivots[low] = std::move(col);
        has[low] = 1;
        ++rank;
        break;
      }
      const auto& p = pivots[low];
      col = combine(p.back().second, col, col.back().second, p);
    }
  }
  return rank;
}

}  // namespace

std::size_t rank_gf2_sparse(const BoundaryMatrix& m) {
  std::vector<std::vector<std::uint32_t>> pivots(m.rows);
  std::vector<char> has(m.rows, 0);
  std::size_t rank = 0;
  std::vector<std::uint32_t> tmp;
  for (const auto& src : m.columns) {
    std::vector<std::uint32_t> col;
    for (auto [r, v] : src)
      if (v % 2 != 0) col.push_back(r);
    while (!col.empty()) {
      const auto low = col.back();
      if (!has[low]) {
        pivots[low] = std::move(col);
        has[low] = 1;
        ++rank;
        break;
      }
      tmp.clear();
      std::set_symmetric_difference(col.begin(), col.end(), pivots[low].begin(), pivots[low].end(),
                                    std::back_inserter(tmp));
      col.swap(tmp);
    }
  }
  return rank;
}

std::size_t rank_gf2_dense(const BoundaryMatrix& m) {
  const std::size_t words = (m.rows + 63) / 64;
  std::vector<std::vector<std::uint64_t>> pivots(m.rows);
  std::size_t rank = 0;
  std::vector<std::uint64_t> col(words);
  for (const auto& src : m.columns) {
    std::fill(col.begin(), col.end(), 0);
    for (auto [r, v] : src)
      if (v % 2 != 0) col[r >> 6] ^= std::uint64_t{1} << (r & 63);
    for (std::size_t w = words; w-- > 0;) {
      while (col[w]) {
        const std::size_t low = w * 64 + (63 - static_cast<std::size_t>(std::countl_zero(col[w])));
        if (pivots[low].empty()) {
          pivots[low] = col;
          ++rank;
          w = 0;
          break;
        }
        const auto& p = pivots[low];
        for (std::size_t k = 0; k <= w; ++k) col[k] ^= p[k];
      }
    }
  }
  return rank;
}

std::size_t rank_gf2(const BoundaryMatrix& m) {
  return m.rows <= 4096 ? rank_gf2_dense(m) : rank_gf2_sparse(m);
}

std::size_t rank_rationals(const BoundaryMatrix& m) {
  try {
    return rank_fraction_free<std::int64_t>(m);
  } catch (const Overflow&) {
    return rank_fraction_free<BigInt>(m);
  }
}

namespace {

using DenseMatrix = std::vector<std::vector<BigInt>>;

void dense_smith(DenseMatrix a, std::vector<BigInt>& out) {
  const std::size_t m = a.size();
  if (m == 0) return;
  const std::size_t n = a[0].size();
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest non-zero entry of the trailing block becomes the pivot.
    std::size_t bi = m, bj = n;
    BigInt best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (bi == m || abs_value(a[i][j]) < best)) {
          best = abs_value(a[i][j]);
          bi = i;
          bj = j;
        }
    if (bi == m) break;
    std::swap(a[t], a[bi]);
    swap_cols(t, bj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        const BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row t / column t to the pivot.
        std::size_t pi = t, pj = t;
        BigInt small = abs_value(a[t][t]);
        for (std::size_t i = t + 1; i < m; ++i)
          if (a[i][t] != 0 && abs_value(a[i][t]) < small) {
            small = abs_value(a[i][t]);
            pi = i;
            pj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[t][j] != 0 && abs_value(a[t][j]) < small) {
            small = abs_value(a[t][j]);
            pi = t;
            pj = j;
          }
        std::swap(a[t], a[pi]);
        swap_cols(t, pj);
        continue;
      }
      // Divisibility: fold a row with a non-multiple into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
            divides = false;
          }
      if (divides) break;
    }
    out.push_back(abs_value(a[t][t]));
  }
}

}  // namespace

std::vector<BigInt> smith_invariants(const BoundaryMatrix& m) {
  std::vector<std::map<std::uint32_t, BigInt>> cols(m.columns.size());
  std::vector<std::set<std::uint32_t>> row_cols(m.rows);
  for (std::size_t c = 0; c < m.columns.size(); ++c)
    for (auto [r, v] : m.columns[c]) {
      cols[c][r] = v;
      row_cols[r].insert(static_cast<std::uint32_t>(c));
    }
  std::vector<char> alive(cols.size(), 1);
  std::vector<BigInt> out;
  // Unit pivots are eliminated sparsely: clear the pivot row through column
  // operations, then drop the row and the column.
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!alive[c]) continue;
      auto it = std::find_if(cols[c].begin(), cols[c].end(),
                             [](const auto& e) { return e.second == 1 || e.second == -1; });
      if (it == cols[c].end()) continue;
      const auto r = it->first;
      const BigInt unit = it->second;
      const std::vector<std::uint32_t> others(row_cols[r].begin(), row_cols[r].end());
      for (auto o : others) {
        if (o == c) continue;
        const BigInt factor = cols[o][r] * unit;
        for (const auto& [rr, v] : cols[c]) {
          auto& slot = cols[o][rr];
          slot -= factor * v;
          if (slot == 0) {
            cols[o].erase(rr);
            row_cols[rr].erase(o);
          } else {
            row_cols[rr].insert(o);
          }
        }
      }
      for (const auto& [rr, v] : cols[c]) row_cols[rr].erase(static_cast<std::uint32_t>(c));
      cols[c].clear();
      alive[c] = 0;
      out.push_back(1);
      progress = true;
    }
  }
  std::vector<std::uint32_t> live_rows;
  for (std::uint32_t r = 0; r < m.rows; ++r)
    if (!row_cols[r].empty()) live_rows.push_back(r);
  std::vector<std::size_t> live_cols;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (alive[c] && !cols[c].empty()) live_cols.push_back(c);
  if (!live_rows.empty() && !live_cols.empty()) {
    DenseMatrix a(live_rows.size(), std::vector<BigInt>(live_cols.size()));
    for (std::size_t j = 0; j < live_cols.size(); ++j)
      for (const auto& [r, v] : cols[live_cols[j]]) {
        const auto i = std::lower_bound(live_rows.begin(), live_rows.end(), r) - live_rows.begin();
        a[static_cast<std::size_t>(i)][j] = v;
      }
    dense_smith(std::move(a), out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace linalg

BettiReport betti_numbers(const SimplicialComplex& x, Field field) {
  BettiReport rep;
  rep.field = field;
  if (x.empty()) return rep;
  const int top = x.dim();
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
  for (int d = 1; d <= top; ++d) {
    const auto m = boundary_matrix(x, d);
    rank[static_cast<std::size_t>(d)] =
        field == Field::GF2 ? linalg::rank_gf2(m) : linalg::rank_rationals(m);
  }
  for (int d = 0; d <= top; ++d) {
    const auto i = static_cast<std::size_t>(d);
    rep.betti.push_back(static_cast<std::int64_t>(x.level(d).size()) -
                        static_cast<std::int64_t>(rank[i] + rank[i + 1]));
  }
  return rep;
}

std::vector<std::vector<BigInt>> integral_torsion(const SimplicialComplex& x, std::size_t guard) {
  if (x.simplex_count() > guard)
    throw Error(ErrorKind::ResourceLimit, "integral_torsion: complex has " +
                                              std::to_string(x.simplex_count()) +
                                              " simplexes, guard is " + std::to_string(guard));
  std::vector<std::vector<BigInt>> out;
  for (int d = 0; d <= x.dim(); ++d) {
    std::vector<BigInt> t;
    for (auto& f : linalg::smith_invariants(boundary_matrix(x, d + 1)))
      if (f > 1) t.push_back(f);
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

// ±1 chain on the top simplexes of `sub` with zero boundary.
std::vector<int> fundamental_cycle(const SimplicialComplex& sub, int d) {
  const auto& top = sub.level(d);
  if (top.empty()) throw Error(ErrorKind::InvalidInput, "no simplexes in the cycle dimension");
  std::vector<int> z(top.size(), 0);
  if (d == 0) {
    if (top.size() != 2)
      throw Error(ErrorKind::InvalidInput, "a 0-cycle needs exactly two vertices");
    return {1, -1};
  }
  const auto m = boundary_matrix(sub, d);
  std::vector<std::vector<std::pair<std::size_t, int>>> cofaces(m.rows);
  for (std::size_t c = 0; c < m.columns.size(); ++c)
    for (auto [r, v] : m.columns[c]) cofaces[r].emplace_back(c, v);
  for (std::size_t start = 0; start < z.size(); ++start) {
    if (z[start] != 0) continue;
    z[start] = 1;
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      const auto c = q.front();
      q.pop();
      for (auto [r, v] : m.columns[c]) {
        if (cofaces[r].size() != 2) continue;
        for (auto [o, w] : cofaces[r]) {
          if (o == c || z[o] != 0) continue;
          z[o] = -z[c] * v * w;
          q.push(o);
        }
      }
    }
  }
  std::vector<long> sum(m.rows, 0);
  std::vector<int> parity(m.rows, 0);
  for (std::size_t c = 0; c < m.columns.size(); ++c)
    for (auto [r, v] : m.columns[c]) {
      sum[r] += static_cast<long>(v) * z[c];
      parity[r] ^= 1;
    }
  for (std::size_t r = 0; r < m.rows; ++r)
    if (sum[r] != 0 || parity[r] != 0)
      throw Error(ErrorKind::InvalidInput, "top simplexes do not form a fundamental cycle");
  return z;
}

}  // namespace

CycleSurvival cycle_survives(const SimplicialComplex& sub, const SimplicialComplex& x, int d) {
  if (d < 0) throw Error(ErrorKind::InvalidInput, "cycle dimension must be non-negative");
  if (!is_subcomplex(sub, x)) throw Error(ErrorKind::InvalidInput, "not a subcomplex");
  const auto z = fundamental_cycle(sub, d);
  const auto& top = sub.level(d);
  std::vector<std::pair<std::uint32_t, int>> col;
  for (std::size_t i = 0; i < top.size(); ++i)
    col.emplace_back(static_cast<std::uint32_t>(x.index_in_level(top[i])), z[i]);
  std::sort(col.begin(), col.end());
  auto m = boundary_matrix(x, d + 1);
  m.rows = x.level(d).size();
  CycleSurvival out;
  const auto base_q = linalg::rank_rationals(m);
  const auto base_2 = linalg::rank_gf2(m);
  m.columns.push_back(col);
  out.rationals = linalg::rank_rationals(m) > base_q;
  out.gf2 = linalg::rank_gf2(m) > base_2;
  return out;
}

namespace {

int connectivity_of(const BettiReport& b, bool empty) {
  if (empty) return -2;
  const auto red = b.reduced();
  for (std::size_t i = 0; i < red.size(); ++i)
    if (red[i] != 0) return static_cast<int>(i) - 1;
  return std::numeric_limits<int>::max();
}

// Closed loops through the fundamental cycles of a BFS spanning tree.
std::vector<std::vector<Vertex>> fundamental_loops(const SimplicialComplex& x) {
  std::vector<std::vector<Vertex>> loops;
  if (x.empty()) return loops;
  const auto root = x.vertices().front();
  std::vector<Vertex> parent(x.id_bound(), root);
  std::vector<int> depth(x.id_bound(), -1);
  std::queue<Vertex> q;
  q.push(root);
  depth[root] = 0;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    x.neighbors(v).for_each([&](std::size_t w) {
      if (depth[w] >= 0) return;
      depth[w] = depth[v] + 1;
      parent[w] = v;
      q.push(static_cast<Vertex>(w));
    });
  }
  for (const auto& e : x.level(1)) {
    const Vertex a = e[0], b = e[1];
    if (parent[a] == b || parent[b] == a) continue;
    std::vector<Vertex> up_a{a}, up_b{b};
    Vertex u = a, v = b;
    while (u != v) {
      if (depth[u] >= depth[v]) {
        u = parent[u];
        up_a.push_back(u);
      } else {
        v = parent[v];
        up_b.push_back(v);
      }
    }
    up_b.pop_back();
    std::vector<Vertex> loop(up_a.begin(), up_a.end());
    loop.insert(loop.end(), up_b.rbegin(), up_b.rend());
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace

ConnectivityReport connectivity_report(const SimplicialComplex& x, std::optional<int> verified_ample_r) {
  ConnectivityReport rep;
  rep.gf2 = betti_numbers(x, Field::GF2);
  rep.rationals = betti_numbers(x, Field::Rationals);
  rep.connectivity_gf2 = connectivity_of(rep.gf2, x.empty());
  rep.connectivity_rationals = connectivity_of(rep.rationals, x.empty());
  rep.homological_connectivity = std::min(rep.connectivity_gf2, rep.connectivity_rationals);
  if (verified_ample_r && *verified_ample_r >= 4 && rep.homological_connectivity >= 0) {
    const auto loops = fundamental_loops(x);
    bool all = true;
    for (const auto& loop : loops) {
      try {
        const auto disc = fill_loop(x, loop, *verified_ample_r);
        if (!validate_disc(disc, x).valid) {
          all = false;
          break;
        }
        ++rep.loops_filled;
      } catch (const Error&) {
        all = false;
        break;
      }
    }
    rep.simply_connected_certified = all;
  }
  rep.homological_only = !rep.simply_connected_certified;
  rep.caveat = rep.simply_connected_certified
                   ? "pi_1 certified trivial by disc fillings; higher connectivity is homological "
                     "only (torsion-free homology does not imply vanishing homotopy)"
                   : "connectivity is homological only; vanishing Betti numbers do not imply "
                     "vanishing homotopy groups";
  return rep;
}

}  // namespace amplex
