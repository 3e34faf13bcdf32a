#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "overlap/complex.hpp"

namespace overlap {

/// Dense-index view of the 1-skeleton of a complex: vertex i of the graph is
/// `label[i]` of the complex. Edges may carry a multiplicity so that the same
/// type also represents the multigraphs produced by suppressing degree-2 vertices.
struct Graph {
  std::vector<Vertex> label;
  /// adjacency[v] = sorted (neighbour, multiplicity) pairs, no loops.
  std::vector<std::vector<std::pair<int, int>>> adjacency;

  int size() const noexcept { return static_cast<int>(label.size()); }
  /// Sum of edge multiplicities.
  std::int64_t edge_count() const;
  /// Weighted degree (sum of multiplicities at v).
  int weighted_degree(int v) const;
  /// Maximum number of distinct neighbours.
  int max_degree() const;
  bool adjacent(int u, int v) const;
  /// Neighbour bitmask; only valid when size() <= 64.
  std::uint64_t neighbor_mask(int v) const;

  static Graph from_complex(const SimplicialComplex& complex);
  /// Simple graph on 0..n-1 with the given edges.
  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

  /// Graph induced on the dense vertices listed (labels are carried over).
  Graph induced(std::span<const int> dense_vertices) const;
  /// 1-dimensional complex with the original labels.
  SimplicialComplex to_complex() const;
};

/// Connected components as ascending dense-vertex lists, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);

}  // namespace overlap
