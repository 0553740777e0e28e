#include "amplex/simplex.hpp"

#include <algorithm>
#include <string>

#include "amplex/error.hpp"

namespace amplex {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedInput: return "malformed-input";
    case ErrorKind::AbsentSimplex: return "absent-simplex";
    case ErrorKind::AbsentVertex: return "absent-vertex";
    case ErrorKind::IdCollision: return "id-collision";
    case ErrorKind::InvalidQuery: return "invalid-query";
    case ErrorKind::InvalidSubcomplex: return "invalid-subcomplex";
    case ErrorKind::InvalidEmbedding: return "invalid-embedding";
    case ErrorKind::InvalidParameters: return "invalid-parameters";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::NotAmpleEnough: return "not-ample-enough";
    case ErrorKind::OutOfRegime: return "out-of-regime";
  }
  return "unknown";
}

Simplex::Simplex(std::initializer_list<Vertex> vs) : Simplex(std::vector<Vertex>(vs)) {}

Simplex::Simplex(std::vector<Vertex> vs) : v_(std::move(vs)) {
  if (v_.empty()) throw Error(ErrorKind::MalformedInput, "simplex must be non-empty");
  std::sort(v_.begin(), v_.end());
  if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
    throw Error(ErrorKind::MalformedInput,
                "duplicate vertex " + std::to_string(*std::adjacent_find(v_.begin(), v_.end())) +
                    " inside one simplex");
}

bool Simplex::contains(Vertex x) const noexcept {
  return std::binary_search(v_.begin(), v_.end(), x);
}

bool Simplex::is_face_of(const Simplex& o) const noexcept {
  return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
}

bool Simplex::disjoint_from(const Simplex& o) const noexcept {
  auto a = v_.begin();
  auto b = o.v_.begin();
  while (a != v_.end() && b != o.v_.end()) {
    if (*a == *b) return false;
    if (*a < *b) ++a; else ++b;
  }
  return true;
}

Simplex Simplex::with(Vertex x) const {
  std::vector<Vertex> out;
  out.reserve(v_.size() + 1);
  auto it = std::lower_bound(v_.begin(), v_.end(), x);
  if (it != v_.end() && *it == x) return *this;
  out.insert(out.end(), v_.begin(), it);
  out.push_back(x);
  out.insert(out.end(), it, v_.end());
  return from_sorted(std::move(out));
}

Simplex Simplex::without(Vertex x) const {
  std::vector<Vertex> out;
  out.reserve(v_.size());
  for (Vertex v : v_)
    if (v != x) out.push_back(v);
  return from_sorted(std::move(out));
}

Simplex Simplex::united(const Simplex& o) const {
  std::vector<Vertex> out;
  out.reserve(v_.size() + o.v_.size());
  std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (v_.size() < 2) return out;
  out.reserve(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) {
    std::vector<Vertex> f;
    f.reserve(v_.size() - 1);
    for (std::size_t j = 0; j < v_.size(); ++j)
      if (j != i) f.push_back(v_[j]);
    out.push_back(from_sorted(std::move(f)));
  }
  return out;
}

}  // namespace amplex
