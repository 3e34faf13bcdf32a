#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace overlap {

using Vertex = std::int32_t;

/// A simplex is stored as its strictly increasing vertex list.
using Simplex = std::vector<Vertex>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Finite abstract simplicial complex over non-negative integer vertex ids.
///
/// The family is downward closed and materialized eagerly. Simplices are kept in
/// canonical order (by cardinality, then lexicographically), so two complexes
/// with the same family compare equal and serialize identically. Instances are
/// immutable once built.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Downward closure of the listed simplices. Each input list may be unsorted
  /// but must not repeat a vertex or be empty.
  static SimplicialComplex from_simplices(std::span<const Simplex> simplices);
  static SimplicialComplex from_simplices(std::initializer_list<Simplex> simplices);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t simplex_count() const noexcept { return simplices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  /// Position of `s` (sorted) in `simplices()`.
  std::optional<std::size_t> find(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s).has_value(); }
  bool has_vertex(Vertex v) const;

  /// -1 for the empty complex.
  int dimension() const noexcept { return dimension_; }
  /// Maximum number of edges at a vertex.
  int degree() const noexcept { return degree_; }

  /// Vertices joined to `v` by an edge, ascending.
  const std::vector<Vertex>& neighbors(Vertex v) const;
  const std::vector<Simplex>& edges() const noexcept { return edges_; }

  /// Inclusion-maximal simplices in canonical lexicographic order.
  std::vector<Simplex> maximal_simplices() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.simplices_ == b.simplices_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Simplex> simplices_;
  std::vector<Simplex> edges_;
  std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
  std::unordered_map<Vertex, std::vector<Vertex>> adjacency_;
  int dimension_ = -1;
  int degree_ = 0;
};

SimplicialComplex build_complex(std::span<const Simplex> maximal_simplices);

struct ComplexStats {
  int dimension = -1;
  int degree = 0;
  /// Largest number of closed simplices meeting one closed simplex, itself included.
  std::int64_t delta = 0;
  std::int64_t simplex_count = 0;
};

ComplexStats stats(const SimplicialComplex& k);

/// Barycentric subdivision: vertex i of `complex` is simplex `label[i]` of the
/// original (an index into its `simplices()`), simplices are strictly
/// increasing chains.
struct Barycentric {
  SimplicialComplex complex;
  std::vector<std::size_t> label;
};

Barycentric barycentric_subdivision(const SimplicialComplex& k);

/// All simplices of cardinality at most `k + 1`.
SimplicialComplex skeleton(const SimplicialComplex& complex, int k);

/// All simplices whose vertices lie in `subset`. Throws MalformedInput when
/// `subset` names a vertex that is not in the complex.
SimplicialComplex induced_subcomplex(const SimplicialComplex& complex, std::span<const Vertex> subset);

/// Closed simplices meet iff their vertex sets intersect.
bool simplices_meet(const Simplex& a, const Simplex& b);

}  // namespace overlap
