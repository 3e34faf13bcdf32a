#include "overlap/complex.hpp"

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <unordered_set>
#include <string>

#include "overlap/error.hpp"

namespace overlap {

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = s.size() * 0x9e3779b97f4a7c15ULL;
  for (Vertex v : s) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

bool canonical_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Simplex normalized(const Simplex& raw) {
  if (raw.empty()) throw MalformedInput("empty simplex");
  Simplex s = raw;
  std::sort(s.begin(), s.end());
  if (s.front() < 0) throw MalformedInput("negative vertex id " + std::to_string(s.front()));
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw MalformedInput("duplicate vertex inside simplex");
  }
  return s;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_simplices(std::initializer_list<Simplex> simplices) {
  return from_simplices(std::span<const Simplex>(simplices.begin(), simplices.size()));
}

SimplicialComplex SimplicialComplex::from_simplices(std::span<const Simplex> simplices) {
  std::vector<Simplex> inputs;
  inputs.reserve(simplices.size());
  for (const auto& raw : simplices) inputs.push_back(normalized(raw));
  // Largest first: once a simplex is present all of its faces are too.
  std::stable_sort(inputs.begin(), inputs.end(),
                   [](const Simplex& a, const Simplex& b) { return a.size() > b.size(); });

  std::unordered_set<Simplex, SimplexHash> family;
  Simplex face;
  for (const auto& s : inputs) {
    if (family.count(s)) continue;
    const std::size_t m = s.size();
    if (m > 30) throw SizeLimitError("simplex with more than 30 vertices");
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      face.clear();
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (1u << i)) face.push_back(s[i]);
      }
      family.insert(face);
    }
  }

  SimplicialComplex k;
  k.simplices_.assign(family.begin(), family.end());
  std::sort(k.simplices_.begin(), k.simplices_.end(), canonical_less);
  k.index_.reserve(k.simplices_.size());
  for (std::size_t i = 0; i < k.simplices_.size(); ++i) {
    const auto& s = k.simplices_[i];
    k.index_.emplace(s, i);
    k.dimension_ = std::max(k.dimension_, static_cast<int>(s.size()) - 1);
    if (s.size() == 1) {
      k.vertices_.push_back(s[0]);
      k.adjacency_[s[0]];
    } else if (s.size() == 2) {
      k.edges_.push_back(s);
      k.adjacency_[s[0]].push_back(s[1]);
      k.adjacency_[s[1]].push_back(s[0]);
    }
  }
  for (auto& [v, nbrs] : k.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    k.degree_ = std::max(k.degree_, static_cast<int>(nbrs.size()));
  }
  if (k.degree_ < 40 && k.simplices_.size() > k.vertices_.size() << k.degree_) {
    throw InternalError("simplex count exceeds |vertices| * 2^degree");
  }
  return k;
}

std::optional<std::size_t> SimplicialComplex::find(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SimplicialComplex::has_vertex(Vertex v) const { return adjacency_.count(v) != 0; }

const std::vector<Vertex>& SimplicialComplex::neighbors(Vertex v) const {
  static const std::vector<Vertex> none;
  auto it = adjacency_.find(v);
  return it == adjacency_.end() ? none : it->second;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<char> covered(simplices_.size(), 0);
  Simplex face;
  for (const auto& s : simplices_) {
    const std::size_t m = s.size();
    if (m < 2) continue;
    for (std::size_t drop = 0; drop < m; ++drop) {
      face.clear();
      for (std::size_t i = 0; i < m; ++i) {
        if (i != drop) face.push_back(s[i]);
      }
      covered[index_.at(face)] = 1;
    }
  }
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    if (!covered[i]) out.push_back(simplices_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialComplex build_complex(std::span<const Simplex> maximal_simplices) {
  return SimplicialComplex::from_simplices(maximal_simplices);
}

bool simplices_meet(const Simplex& a, const Simplex& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

ComplexStats stats(const SimplicialComplex& k) {
  ComplexStats out;
  out.dimension = k.dimension();
  out.degree = k.degree();
  out.simplex_count = static_cast<std::int64_t>(k.simplex_count());
  const auto& all = k.simplices();
  for (const auto& sigma : all) {
    std::int64_t meeting = 0;
    for (const auto& tau : all) {
      if (simplices_meet(sigma, tau)) ++meeting;
    }
    out.delta = std::max(out.delta, meeting);
  }
  return out;
}

Barycentric barycentric_subdivision(const SimplicialComplex& k) {
  const auto& all = k.simplices();
  // Strict cofaces of each simplex; indices are increasing along any chain
  // because simplices are sorted by cardinality.
  std::vector<std::vector<std::size_t>> cofaces(all.size());
  Simplex face;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& s = all[i];
    const std::size_t m = s.size();
    for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
      face.clear();
      for (std::size_t b = 0; b < m; ++b) {
        if (mask & (1u << b)) face.push_back(s[b]);
      }
      cofaces[*k.find(face)].push_back(i);
    }
  }

  std::vector<Simplex> chains;
  Simplex chain;
  std::function<void(std::size_t)> extend = [&](std::size_t top) {
    chains.push_back(chain);
    for (std::size_t up : cofaces[top]) {
      chain.push_back(static_cast<Vertex>(up));
      extend(up);
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    chain.assign(1, static_cast<Vertex>(i));
    extend(i);
  }

  Barycentric out;
  out.complex = SimplicialComplex::from_simplices(chains);
  out.label.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) out.label[i] = i;
  return out;
}

SimplicialComplex skeleton(const SimplicialComplex& complex, int k) {
  if (k < 0) throw PreconditionError("skeleton dimension must be non-negative");
  std::vector<Simplex> kept;
  for (const auto& s : complex.simplices()) {
    if (static_cast<int>(s.size()) <= k + 1) kept.push_back(s);
  }
  return SimplicialComplex::from_simplices(kept);
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& complex, std::span<const Vertex> subset) {
  std::vector<Vertex> keep(subset.begin(), subset.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (Vertex v : keep) {
    if (!complex.has_vertex(v)) throw MalformedInput("unknown vertex " + std::to_string(v));
  }
  std::vector<Simplex> kept;
  for (const auto& s : complex.simplices()) {
    if (std::includes(keep.begin(), keep.end(), s.begin(), s.end())) kept.push_back(s);
  }
  return SimplicialComplex::from_simplices(kept);
}

}  // namespace overlap
