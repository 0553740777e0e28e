#include "amplex/complex.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "amplex/error.hpp"

namespace amplex {

namespace {

using SimplexSet = std::unordered_set<Simplex, SimplexHash, SimplexEqual>;

void add_closure(const Simplex& s, SimplexSet& out) {
  if (out.count(s)) return;
  const std::size_t k = s.size();
  if (k > 30) throw Error(ErrorKind::ResourceLimit, "simplex too large to close");
  // Each face is visited once; descending into an already-present face is
  // skipped because its faces are present too.
  std::vector<Simplex> stack{s};
  while (!stack.empty()) {
    Simplex cur = std::move(stack.back());
    stack.pop_back();
    if (!out.insert(cur).second) continue;
    for (auto& f : cur.facets())
      if (!out.count(f)) stack.push_back(std::move(f));
  }
}

std::string describe(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace

void SimplicialComplex::build_from_closed_set(SimplexSet set) {
  index_ = std::move(set);
  levels_.clear();
  vertices_.clear();
  for (const auto& s : index_) {
    const auto d = static_cast<std::size_t>(s.dim());
    if (levels_.size() <= d) levels_.resize(d + 1);
    levels_[d].push_back(s);
  }
  for (auto& lvl : levels_) std::sort(lvl.begin(), lvl.end());
  Vertex bound = 0;
  if (!levels_.empty()) {
    for (const auto& s : levels_[0]) vertices_.push_back(s[0]);
    bound = vertices_.empty() ? 0 : vertices_.back() + 1;
  }
  vertex_mask_ = VertexBitset(bound);
  for (Vertex v : vertices_) vertex_mask_.set(v);
  adjacency_.assign(bound, VertexBitset(bound));
  if (levels_.size() > 1) {
    for (const auto& e : levels_[1]) {
      adjacency_[e[0]].set(e[1]);
      adjacency_[e[1]].set(e[0]);
    }
  }
  star_sizes_.assign(bound, 0);
  for (const auto& lvl : levels_)
    for (const auto& s : lvl)
      for (Vertex v : s) ++star_sizes_[v];
}

SimplicialComplex SimplicialComplex::from_maximal(std::span<const Simplex> maximal) {
  SimplexSet set;
  for (const auto& s : maximal) {
    if (s.empty()) throw Error(ErrorKind::MalformedInput, "empty simplex in input");
    add_closure(s, set);
  }
  SimplicialComplex x;
  x.build_from_closed_set(std::move(set));
  return x;
}

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<std::vector<Vertex>>& maximal) {
  std::vector<Simplex> simplexes;
  simplexes.reserve(maximal.size());
  for (const auto& m : maximal) simplexes.emplace_back(m);
  return from_maximal(simplexes);
}

SimplicialComplex SimplicialComplex::from_closed(std::vector<Simplex> simplexes) {
  SimplexSet set;
  set.reserve(simplexes.size());
  for (auto& s : simplexes) {
    if (s.empty()) throw Error(ErrorKind::MalformedInput, "empty simplex in input");
    set.insert(std::move(s));
  }
  for (const auto& s : set)
    for (const auto& f : s.facets())
      if (!set.count(f))
        throw Error(ErrorKind::MalformedInput, "family is not downward closed: face " + describe(f) +
                                                   " of " + describe(s) + " missing");
  SimplicialComplex x;
  x.build_from_closed_set(std::move(set));
  return x;
}

const std::vector<Simplex>& SimplicialComplex::level(int d) const {
  static const std::vector<Simplex> kEmpty;
  if (d < 0 || d >= static_cast<int>(levels_.size())) return kEmpty;
  return levels_[static_cast<std::size_t>(d)];
}

std::vector<Simplex> SimplicialComplex::simplexes() const {
  std::vector<Simplex> out;
  out.reserve(index_.size());
  for (const auto& lvl : levels_) out.insert(out.end(), lvl.begin(), lvl.end());
  return out;
}

const VertexBitset& SimplicialComplex::neighbors(Vertex v) const {
  if (!has_vertex(v))
    throw Error(ErrorKind::AbsentVertex, "vertex " + std::to_string(v) + " not in complex");
  return adjacency_[v];
}

std::size_t SimplicialComplex::star_size(Vertex v) const {
  if (!has_vertex(v))
    throw Error(ErrorKind::AbsentVertex, "vertex " + std::to_string(v) + " not in complex");
  return star_sizes_[v];
}

std::vector<Simplex> SimplicialComplex::maximal_simplexes() const {
  std::vector<Simplex> out;
  for (std::size_t d = 0; d < levels_.size(); ++d) {
    for (const auto& s : levels_[d]) {
      bool maximal = true;
      if (d + 1 < levels_.size()) {
        // s is maximal iff no vertex w extends it; candidates are common
        // neighbours of all its vertices.
        VertexBitset common = adjacency_[s[0]];
        for (std::size_t i = 1; i < s.size(); ++i) common &= adjacency_[s[i]];
        common.for_each([&](std::size_t w) {
          if (maximal && contains(s.with(static_cast<Vertex>(w)))) maximal = false;
        });
      }
      if (maximal) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  f.reserve(levels_.size());
  for (const auto& lvl : levels_) f.push_back(lvl.size());
  return f;
}

std::int64_t SimplicialComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (std::size_t d = 0; d < levels_.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(levels_[d].size());
  return chi;
}

std::size_t SimplicialComplex::index_in_level(const Simplex& s) const {
  const auto& lvl = level(s.dim());
  auto it = std::lower_bound(lvl.begin(), lvl.end(), s);
  if (it == lvl.end() || *it != s)
    throw Error(ErrorKind::AbsentSimplex, "simplex " + describe(s) + " not in complex");
  return static_cast<std::size_t>(it - lvl.begin());
}

bool SimplicialComplex::is_closed() const {
  for (const auto& s : index_)
    for (const auto& f : s.facets())
      if (!contains(f)) return false;
  for (Vertex v : vertices_)
    if (!contains(Simplex::from_sorted(std::vector<Vertex>{v}))) return false;
  return true;
}

AmbientContext AmbientContext::standard(std::size_t n) {
  AmbientContext ctx;
  ctx.ambient_vertices.resize(n);
  std::iota(ctx.ambient_vertices.begin(), ctx.ambient_vertices.end(), Vertex{0});
  return ctx;
}

void AmbientContext::validate(const SimplicialComplex& x) const {
  if (!std::is_sorted(ambient_vertices.begin(), ambient_vertices.end()))
    throw Error(ErrorKind::InvalidParameters, "ambient vertex list must be sorted");
  for (Vertex v : x.vertices())
    if (!std::binary_search(ambient_vertices.begin(), ambient_vertices.end(), v))
      throw Error(ErrorKind::AbsentVertex,
                  "complex vertex " + std::to_string(v) + " outside the ambient simplex");
}

SimplicialComplex link(const SimplicialComplex& x, const Simplex& sigma) {
  if (!x.contains(sigma))
    throw Error(ErrorKind::AbsentSimplex, "simplex " + describe(sigma) + " not in complex");
  std::vector<Simplex> out;
  for (int d = sigma.dim() + 1; d <= x.dim(); ++d)
    for (const auto& rho : x.level(d))
      if (sigma.is_face_of(rho)) {
        std::vector<Vertex> rest;
        std::set_difference(rho.begin(), rho.end(), sigma.begin(), sigma.end(),
                            std::back_inserter(rest));
        out.push_back(Simplex::from_sorted(std::move(rest)));
      }
  return SimplicialComplex::from_closed(std::move(out));
}

SimplicialComplex closed_star(const SimplicialComplex& x, Vertex v) {
  if (!x.has_vertex(v))
    throw Error(ErrorKind::AbsentVertex, "vertex " + std::to_string(v) + " not in complex");
  std::vector<Simplex> out;
  x.for_each_simplex([&](const Simplex& s) {
    if (s.contains(v) || x.contains(s.with(v))) out.push_back(s);
  });
  return SimplicialComplex::from_closed(std::move(out));
}

SimplicialComplex induced(const SimplicialComplex& x, std::span<const Vertex> u) {
  VertexBitset mask(x.id_bound());
  for (Vertex v : u) {
    if (!x.has_vertex(v))
      throw Error(ErrorKind::AbsentVertex, "vertex " + std::to_string(v) + " not in complex");
    mask.set(v);
  }
  std::vector<Simplex> out;
  x.for_each_simplex([&](const Simplex& s) {
    if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return mask.test(v); })) out.push_back(s);
  });
  return SimplicialComplex::from_closed(std::move(out));
}

SimplicialComplex join(const SimplicialComplex& x, const SimplicialComplex& y) {
  for (Vertex v : x.vertices())
    if (y.has_vertex(v))
      throw Error(ErrorKind::IdCollision, "join operands share vertex " + std::to_string(v));
  std::vector<Simplex> out = x.simplexes();
  const auto ys = y.simplexes();
  out.insert(out.end(), ys.begin(), ys.end());
  x.for_each_simplex([&](const Simplex& s) {
    for (const auto& t : ys) out.push_back(s.united(t));
  });
  return SimplicialComplex::from_closed(std::move(out));
}

SimplicialComplex cone(Vertex apex, const SimplicialComplex& base) {
  if (base.has_vertex(apex))
    throw Error(ErrorKind::IdCollision, "cone apex " + std::to_string(apex) + " already in base");
  std::vector<Simplex> out = base.simplexes();
  const std::size_t n = out.size();
  out.reserve(2 * n + 1);
  for (std::size_t i = 0; i < n; ++i) out.push_back(out[i].with(apex));
  out.push_back(Simplex::from_sorted(std::vector<Vertex>{apex}));
  return SimplicialComplex::from_closed(std::move(out));
}

SimplicialComplex shift_vertices(const SimplicialComplex& x, Vertex offset) {
  std::vector<Simplex> out;
  out.reserve(x.simplex_count());
  x.for_each_simplex([&](const Simplex& s) {
    std::vector<Vertex> vs(s.begin(), s.end());
    for (auto& v : vs) v += offset;
    out.push_back(Simplex::from_sorted(std::move(vs)));
  });
  return SimplicialComplex::from_closed(std::move(out));
}

SimplicialComplex attach_cones(const SimplicialComplex& x,
                               std::span<const std::pair<Vertex, SimplicialComplex>> cones) {
  std::vector<Simplex> out = x.simplexes();
  VertexBitset apexes(0);
  for (const auto& [apex, base] : cones) {
    if (x.has_vertex(apex) || apexes.test(apex))
      throw Error(ErrorKind::IdCollision, "cone apex " + std::to_string(apex) + " is not fresh");
    if (apexes.size() <= apex) apexes.resize(static_cast<std::size_t>(apex) + 1);
    apexes.set(apex);
    if (!is_subcomplex(base, x))
      throw Error(ErrorKind::InvalidSubcomplex, "cone base is not a subcomplex");
    out.push_back(Simplex::from_sorted(std::vector<Vertex>{apex}));
    base.for_each_simplex([&](const Simplex& s) { out.push_back(s.with(apex)); });
  }
  return SimplicialComplex::from_closed(std::move(out));
}

namespace {

template <class Emit>
void for_each_external(const SimplicialComplex& x, const AmbientContext& ctx, int max_dim,
                       Emit&& emit) {
  ctx.validate(x);
  if (max_dim < 0) return;
  for (Vertex v : ctx.ambient_vertices)
    if (!x.has_vertex(v)) emit(Simplex::from_sorted(std::vector<Vertex>{v}));
  if (max_dim < 1) return;
  const auto& vs = x.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!x.neighbors(vs[i]).test(vs[j]))
        emit(Simplex::from_sorted(std::vector<Vertex>{vs[i], vs[j]}));
  std::vector<Vertex> buf;
  for (int d = 2; d <= max_dim && d - 1 <= x.dim(); ++d) {
    for (const auto& sigma : x.level(d - 1)) {
      VertexBitset common = x.neighbors(sigma[0]);
      for (std::size_t i = 1; i < sigma.size(); ++i) common &= x.neighbors(sigma[i]);
      common.for_each([&](std::size_t wi) {
        const auto w = static_cast<Vertex>(wi);
        if (w <= sigma.back()) return;
        buf.assign(sigma.begin(), sigma.end());
        buf.push_back(w);
        if (x.contains(std::span<const Vertex>(buf))) return;
        // Facets omitting some vertex of sigma; the facet omitting w is sigma.
        for (std::size_t skip = 0; skip < sigma.size(); ++skip) {
          std::vector<Vertex> f;
          f.reserve(sigma.size());
          for (std::size_t t = 0; t < buf.size(); ++t)
            if (t != skip) f.push_back(buf[t]);
          if (!x.contains(std::span<const Vertex>(f))) return;
        }
        emit(Simplex::from_sorted(buf));
      });
    }
  }
}

}  // namespace

std::vector<Simplex> external_simplexes(const SimplicialComplex& x, const AmbientContext& ctx,
                                        int max_dim) {
  std::vector<Simplex> out;
  for_each_external(x, ctx, max_dim, [&](Simplex s) { out.push_back(std::move(s)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_external_simplexes(const SimplicialComplex& x, const AmbientContext& ctx,
                                     int max_dim) {
  std::size_t n = 0;
  for_each_external(x, ctx, max_dim, [&](const Simplex&) { ++n; });
  return n;
}

bool is_subcomplex(const SimplicialComplex& sub, const SimplicialComplex& x) {
  bool ok = true;
  sub.for_each_simplex([&](const Simplex& s) {
    if (ok && !x.contains(s)) ok = false;
  });
  return ok;
}

namespace {

/// Include/exclude depth-first search over the canonical simplex order.
class SubcomplexWalker {
 public:
  SubcomplexWalker(const SimplicialComplex& x, std::size_t max_vertices)
      : simplexes_(x.simplexes()), max_vertices_(max_vertices), included_(simplexes_.size(), 0) {
    facets_.resize(simplexes_.size());
    for (std::size_t i = 0; i < simplexes_.size(); ++i)
      for (const auto& f : simplexes_[i].facets()) {
        auto it = std::lower_bound(simplexes_.begin(), simplexes_.end(), f);
        facets_[i].push_back(static_cast<std::uint32_t>(it - simplexes_.begin()));
      }
  }

  template <class Visit>
  std::uint64_t run(Visit&& visit) {
    count_ = 0;
    stopped_ = false;
    descend(0, 0, visit);
    return count_;
  }

  std::vector<Simplex> current() const {
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < simplexes_.size(); ++i)
      if (included_[i]) out.push_back(simplexes_[i]);
    return out;
  }

 private:
  template <class Visit>
  void descend(std::size_t i, std::size_t nverts, Visit& visit) {
    if (stopped_) return;
    if (i == simplexes_.size()) {
      ++count_;
      if (!visit(*this)) stopped_ = true;
      return;
    }
    descend(i + 1, nverts, visit);
    bool can = true;
    for (auto f : facets_[i])
      if (!included_[f]) { can = false; break; }
    const bool is_vertex = simplexes_[i].size() == 1;
    if (can && is_vertex && nverts >= max_vertices_) can = false;
    if (can && !stopped_) {
      included_[i] = 1;
      descend(i + 1, nverts + (is_vertex ? 1 : 0), visit);
      included_[i] = 0;
    }
  }

  std::vector<Simplex> simplexes_;
  std::vector<std::vector<std::uint32_t>> facets_;
  std::size_t max_vertices_;
  std::vector<char> included_;
  std::uint64_t count_ = 0;
  bool stopped_ = false;
};

}  // namespace

std::uint64_t enumerate_subcomplexes(
    const SimplicialComplex& x, std::size_t max_vertices,
    const std::function<bool(const SimplicialComplex&)>& visit) {
  SubcomplexWalker walker(x, max_vertices);
  return walker.run([&](const SubcomplexWalker& w) {
    return visit(SimplicialComplex::from_closed(w.current()));
  });
}

std::uint64_t enumerate_subcomplexes(
    const SimplicialComplex& x, const std::function<bool(const SimplicialComplex&)>& visit) {
  return enumerate_subcomplexes(x, SIZE_MAX, visit);
}

std::uint64_t count_subcomplexes(const SimplicialComplex& x, std::uint64_t stop_after) {
  SubcomplexWalker walker(x, SIZE_MAX);
  std::uint64_t seen = 0;
  return walker.run([&](const SubcomplexWalker&) { return ++seen < stop_after; });
}

std::vector<std::size_t> f_vector(const SimplicialComplex& x) { return x.f_vector(); }
std::int64_t euler_characteristic(const SimplicialComplex& x) { return x.euler_characteristic(); }

namespace {

class IsoSearch {
 public:
  IsoSearch(const SimplicialComplex& x, const SimplicialComplex& y) : x_(x), y_(y) {
    xs_ = x.simplexes();
    ys_ = y.simplexes();
    xstar_.resize(x.id_bound());
    ystar_.resize(y.id_bound());
    for (std::size_t i = 0; i < xs_.size(); ++i)
      for (Vertex v : xs_[i]) xstar_[v].push_back(i);
    for (std::size_t i = 0; i < ys_.size(); ++i)
      for (Vertex v : ys_[i]) ystar_[v].push_back(i);
    fwd_.assign(x.id_bound(), kNone);
    bwd_.assign(y.id_bound(), kNone);
    // Most constrained first: high star size, then keep neighbours of placed
    // vertices early so adjacency checks prune quickly.
    std::vector<Vertex> rest = x.vertices();
    while (!rest.empty()) {
      std::size_t best = 0;
      long best_score = -1;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        long adj = 0;
        for (Vertex p : order_)
          if (x.neighbors(rest[i]).test(p)) ++adj;
        const long score = adj * 100000 + static_cast<long>(x.star_size(rest[i]));
        if (score > best_score) { best_score = score; best = i; }
      }
      order_.push_back(rest[best]);
      rest.erase(rest.begin() + static_cast<long>(best));
    }
  }

  bool solve(std::size_t depth = 0) {
    if (depth == order_.size()) return true;
    const Vertex a = order_[depth];
    for (Vertex b : y_.vertices()) {
      if (bwd_[b] != kNone) continue;
      if (x_.degree(a) != y_.degree(b) || x_.star_size(a) != y_.star_size(b)) continue;
      fwd_[a] = b;
      bwd_[b] = a;
      if (consistent(a, b) && solve(depth + 1)) return true;
      fwd_[a] = kNone;
      bwd_[b] = kNone;
    }
    return false;
  }

  std::vector<std::pair<Vertex, Vertex>> mapping() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex v : x_.vertices()) out.emplace_back(v, fwd_[v]);
    return out;
  }

 private:
  static constexpr Vertex kNone = UINT32_MAX;

  bool consistent(Vertex a, Vertex b) {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<Vertex> img;
    for (auto i : xstar_[a]) {
      const auto& s = xs_[i];
      img.clear();
      bool placed = true;
      for (Vertex v : s) {
        if (fwd_[v] == kNone) { placed = false; break; }
        img.push_back(fwd_[v]);
      }
      if (!placed) continue;
      ++nx;
      std::sort(img.begin(), img.end());
      if (!y_.contains(std::span<const Vertex>(img))) return false;
    }
    for (auto i : ystar_[b]) {
      bool placed = true;
      for (Vertex v : ys_[i])
        if (bwd_[v] == kNone) { placed = false; break; }
      if (placed) ++ny;
    }
    return nx == ny;
  }

  const SimplicialComplex& x_;
  const SimplicialComplex& y_;
  std::vector<Simplex> xs_, ys_;
  std::vector<std::vector<std::size_t>> xstar_, ystar_;
  std::vector<Vertex> fwd_, bwd_, order_;
};

}  // namespace

std::optional<std::vector<std::pair<Vertex, Vertex>>> is_isomorphic(
    const SimplicialComplex& x, const SimplicialComplex& y, std::size_t max_vertices) {
  if (x.vertex_count() > max_vertices || y.vertex_count() > max_vertices)
    throw Error(ErrorKind::ResourceLimit, "isomorphism test limited to " +
                                              std::to_string(max_vertices) + " vertices");
  if (x.f_vector() != y.f_vector()) return std::nullopt;
  IsoSearch search(x, y);
  if (!search.solve()) return std::nullopt;
  return search.mapping();
}

SimplicialComplex full_simplex(std::span<const Vertex> vs) {
  if (vs.empty()) return {};
  std::vector<Simplex> top{Simplex(std::vector<Vertex>(vs.begin(), vs.end()))};
  return SimplicialComplex::from_maximal(top);
}

SimplicialComplex full_simplex(std::size_t k) {
  std::vector<Vertex> vs(k);
  std::iota(vs.begin(), vs.end(), Vertex{0});
  return full_simplex(vs);
}

SimplicialComplex cycle_graph(std::size_t k) {
  std::vector<Simplex> edges;
  for (std::size_t i = 0; i < k; ++i)
    edges.emplace_back(std::vector<Vertex>{static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % k)});
  return SimplicialComplex::from_maximal(edges);
}

SimplicialComplex path_graph(std::span<const Vertex> vs) {
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < vs.size(); ++i) out.emplace_back(std::vector<Vertex>{vs[i]});
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    out.emplace_back(std::vector<Vertex>{vs[i], vs[i + 1]});
  return SimplicialComplex::from_maximal(out);
}

}  // namespace amplex
