#include "amplex/disc.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "amplex/ampleness.hpp"
#include "amplex/error.hpp"

namespace amplex {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::string describe(std::span<const Vertex> u, const SimplicialComplex& a) {
  std::ostringstream os;
  os << "U = {";
  for (std::size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
  os << "}, A = [";
  bool first = true;
  for (const auto& s : a.maximal_simplexes()) {
    os << (first ? "" : " ") << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    first = false;
  }
  os << "]";
  return os.str();
}

// Path (closed = false) or cycle complex on the images of disc ids.
SimplicialComplex chain_complex(const std::vector<std::uint32_t>& ids, const std::vector<Vertex>& image,
                                bool closed) {
  std::vector<std::vector<Vertex>> faces;
  for (auto id : ids) faces.push_back({image[id]});
  const std::size_t edges = closed ? ids.size() : ids.size() - 1;
  for (std::size_t i = 0; i < edges; ++i)
    faces.push_back({image[ids[i]], image[ids[(i + 1) % ids.size()]]});
  return SimplicialComplex::from_maximal(faces);
}

std::vector<Vertex> distinct_images(const std::vector<std::uint32_t>& ids, const std::vector<Vertex>& image) {
  std::vector<Vertex> u;
  for (auto id : ids) u.push_back(image[id]);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

}  // namespace

std::vector<std::array<Vertex, 3>> FilledDisc::triangles() const {
  std::vector<std::array<Vertex, 3>> out;
  for (const auto& t : disc_triangles) {
    std::array<Vertex, 3> s{image[t[0]], image[t[1]], image[t[2]]};
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  return out;
}

std::size_t FilledDisc::internal_bound() const {
  const auto n = boundary.size();
  if (n <= 3) return 0;
  return ceil_div(n - 3, static_cast<std::size_t>(r - 3));
}

std::size_t FilledDisc::triangle_bound() const {
  return internal_bound() * static_cast<std::size_t>(r - 1) + 1;
}

FilledDisc fill_loop(const std::function<const SimplicialComplex&()>& current, const WitnessSource& source,
                     std::span<const Vertex> loop, int r) {
  if (r < 4) throw Error(ErrorKind::InvalidParameters, "fill_loop needs r >= 4");
  if (loop.size() < 3) throw Error(ErrorKind::InvalidInput, "a loop needs at least 3 vertices");
  {
    const auto& x = current();
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vertex a = loop[i], b = loop[(i + 1) % loop.size()];
      if (a == b || !x.has_vertex(a) || !x.has_vertex(b) || !x.neighbors(a).test(b))
        throw Error(ErrorKind::InvalidInput, "loop step " + std::to_string(a) + " -> " +
                                                 std::to_string(b) + " is not an edge");
    }
  }
  FilledDisc disc;
  disc.r = r;
  disc.boundary.assign(loop.begin(), loop.end());
  disc.image = disc.boundary;
  std::vector<std::uint32_t> cur(loop.size());
  for (std::uint32_t i = 0; i < cur.size(); ++i) cur[i] = i;

  auto request = [&](const std::vector<Vertex>& u, const SimplicialComplex& a) {
    auto w = source(u, a);
    if (!w) throw Error(ErrorKind::NotAmpleEnough, "no witness for " + describe(u, a));
    const auto id = static_cast<std::uint32_t>(disc.image.size());
    disc.image.push_back(*w);
    return id;
  };

  if (loop.size() == 3) {
    std::vector<Vertex> t(loop.begin(), loop.end());
    std::sort(t.begin(), t.end());
    if (current().contains(Simplex::from_sorted(t))) {
      disc.disc_triangles.push_back({0, 1, 2});
      return disc;
    }
  }
  const auto width = static_cast<std::size_t>(r);
  while (cur.size() > width) {
    // Arc of r vertices from the first occurrence of the least image.
    std::size_t start = 0;
    for (std::size_t i = 1; i < cur.size(); ++i)
      if (disc.image[cur[i]] < disc.image[cur[start]]) start = i;
    std::rotate(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(start), cur.end());
    const std::vector<std::uint32_t> arc(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(width));
    const auto u = distinct_images(arc, disc.image);
    const auto id = request(u, chain_complex(arc, disc.image, false));
    for (std::size_t i = 0; i + 1 < arc.size(); ++i) disc.disc_triangles.push_back({id, arc[i], arc[i + 1]});
    std::vector<std::uint32_t> next{arc.front(), id};
    next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(width - 1), cur.end());
    cur = std::move(next);
  }
  const auto u = distinct_images(cur, disc.image);
  const auto id = request(u, chain_complex(cur, disc.image, true));
  for (std::size_t i = 0; i < cur.size(); ++i)
    disc.disc_triangles.push_back({id, cur[i], cur[(i + 1) % cur.size()]});
  return disc;
}

FilledDisc fill_loop(const SimplicialComplex& x, std::span<const Vertex> loop, int r) {
  return fill_loop([&]() -> const SimplicialComplex& { return x; },
                   [&](std::span<const Vertex> u, const SimplicialComplex& a) { return ample_witness(x, u, a); },
                   loop, r);
}

DiscCertificate validate_disc(const FilledDisc& disc, const SimplicialComplex& x) {
  DiscCertificate cert;
  const auto nv = disc.image.size();
  const auto nb = disc.boundary.size();
  auto fail = [&](std::string why) {
    cert.failure = std::move(why);
    return cert;
  };
  if (nb < 3) return fail("boundary shorter than 3");
  for (std::size_t i = 0; i < nb; ++i)
    if (disc.image[i] != disc.boundary[i]) return fail("boundary images disagree with the loop");
  using Edge = std::pair<std::uint32_t, std::uint32_t>;
  auto edge = [](std::uint32_t a, std::uint32_t b) { return a < b ? Edge{a, b} : Edge{b, a}; };
  std::map<Edge, int> edge_use;
  std::set<std::array<std::uint32_t, 3>> seen;
  for (const auto& t : disc.disc_triangles) {
    for (auto v : t)
      if (v >= nv) return fail("triangle uses an unknown disc vertex");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) return fail("degenerate disc triangle");
    auto s = t;
    std::sort(s.begin(), s.end());
    if (!seen.insert(s).second) return fail("repeated disc triangle");
    std::vector<Vertex> img{disc.image[t[0]], disc.image[t[1]], disc.image[t[2]]};
    std::sort(img.begin(), img.end());
    if (img[0] == img[1] || img[1] == img[2]) return fail("triangle image is degenerate");
    if (!x.contains(Simplex::from_sorted(img))) return fail("triangle image is not a simplex of X");
    ++edge_use[edge(t[0], t[1])];
    ++edge_use[edge(t[1], t[2])];
    ++edge_use[edge(t[0], t[2])];
  }
  std::set<Edge> boundary_edges;
  for (std::uint32_t i = 0; i < nb; ++i) boundary_edges.insert(edge(i, static_cast<std::uint32_t>((i + 1) % nb)));
  for (const auto& e : boundary_edges)
    if (edge_use[e] != 1) return fail("boundary edge not in exactly one triangle");
  for (const auto& [e, k] : edge_use)
    if (!boundary_edges.count(e) && k != 2) return fail("interior edge not in exactly two triangles");
  // Euler characteristic and connectivity.
  std::vector<std::uint32_t> parent(nv);
  for (std::uint32_t i = 0; i < nv; ++i) parent[i] = i;
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (const auto& [e, k] : edge_use) parent[find(e.first)] = find(e.second);
  for (std::uint32_t i = 1; i < nv; ++i)
    if (find(i) != find(0)) return fail("disc is not connected");
  const auto chi = static_cast<long>(nv) - static_cast<long>(edge_use.size()) +
                   static_cast<long>(disc.disc_triangles.size());
  if (chi != 1) return fail("Euler characteristic is not 1");
  // Vertex links: a cycle inside, a path on the boundary.
  std::vector<std::vector<Edge>> links(nv);
  for (const auto& t : disc.disc_triangles)
    for (int i = 0; i < 3; ++i) links[t[i]].push_back(edge(t[(i + 1) % 3], t[(i + 2) % 3]));
  for (std::uint32_t v = 0; v < nv; ++v) {
    std::map<std::uint32_t, int> deg;
    for (const auto& [a, b] : links[v]) {
      ++deg[a];
      ++deg[b];
    }
    int ends = 0;
    for (const auto& [w, d] : deg) {
      if (d > 2) return fail("vertex link branches");
      ends += d == 1;
    }
    const bool on_boundary = v < nb;
    if (on_boundary ? ends != 2 : ends != 0) return fail("vertex link has the wrong shape");
    // Single component: a path/cycle with |deg| vertices has |deg| - 1 or |deg| edges.
    const std::size_t expect = on_boundary ? deg.size() - 1 : deg.size();
    if (links[v].size() != expect) return fail("vertex link is not a single path or cycle");
    std::map<std::uint32_t, std::uint32_t> lp;
    for (const auto& [w, d] : deg) lp[w] = w;
    std::function<std::uint32_t(std::uint32_t)> lf = [&](std::uint32_t a) {
      return lp[a] == a ? a : lp[a] = lf(lp[a]);
    };
    for (const auto& [a, b] : links[v]) lp[lf(a)] = lf(b);
    std::set<std::uint32_t> roots;
    for (const auto& [w, d] : deg) roots.insert(lf(w));
    if (roots.size() != 1) return fail("vertex link is disconnected");
  }
  cert.valid = true;
  cert.within_bounds =
      disc.internal_vertex_count() <= disc.internal_bound() && disc.triangle_count() <= disc.triangle_bound();
  if (!cert.within_bounds) cert.failure = "size bound exceeded";
  return cert;
}

nlohmann::json to_json(const FilledDisc& disc) {
  nlohmann::json j;
  j["r"] = disc.r;
  j["boundary"] = disc.boundary;
  j["boundary_length"] = disc.boundary_length();
  j["internal_vertex_count"] = disc.internal_vertex_count();
  j["triangle_count"] = disc.triangle_count();
  j["internal_bound"] = disc.internal_bound();
  j["triangle_bound"] = disc.triangle_bound();
  j["image"] = disc.image;
  j["disc_triangles"] = disc.disc_triangles;
  j["triangles"] = disc.triangles();
  return j;
}

std::string to_edge_list(const FilledDisc& disc) {
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const auto& t : disc.triangles()) {
    edges.insert({t[0], t[1]});
    edges.insert({t[1], t[2]});
    edges.insert({t[0], t[2]});
  }
  std::ostringstream os;
  for (const auto& [a, b] : edges) os << a << ' ' << b << '\n';
  return os.str();
}

}  // namespace amplex
