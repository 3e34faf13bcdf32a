#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "overlap/graph.hpp"

namespace overlap {

/// A vertex ordering together with its cut profile.
///
/// `order[i]` is the vertex placed at position i + 1. `cut_profile[i]` counts
/// the edges vw with position(v) <= i < position(w) (1-based positions), so
/// `cut_profile[0]` is always 0 and `width` is the maximum entry.
struct LinearArrangement {
  std::vector<Vertex> order;
  std::vector<int> cut_profile;
  int width = 0;
};

struct CutwidthLimits {
  /// Largest vertex count the subset DP will accept (hard ceiling 28).
  int max_vertices = 24;
  int threads = 1;
  /// Budget of dead-end prefix sets for components beyond the DP (cutwidth_reduced only).
  std::size_t search_states = 4'000'000;
};

/// Arrangement for an ordering given in dense graph indices.
LinearArrangement arrangement_from_order(const Graph& g, std::span<const int> dense_order);

/// Maps an arrangement's labels back to dense indices of `g`; throws
/// PreconditionError if it is not a bijection onto the vertices of `g`.
std::vector<int> dense_order(const Graph& g, const LinearArrangement& arrangement);

/// Optimal arrangement by dynamic programming over prefix sets. The returned
/// ordering is the lexicographically smallest optimal one (in dense order,
/// which matches label order).
LinearArrangement cutwidth_exact(const Graph& g, const CutwidthLimits& limits = {});

/// Literal enumeration of all n! orderings; n <= 9. Test oracle for the DP.
LinearArrangement cutwidth_bruteforce(const Graph& g, int threads = 1);

/// Simulated annealing over adjacent transpositions. Upper bound only.
LinearArrangement cutwidth_heuristic(const Graph& g, std::uint64_t seed, int budget = 20000);

/// Exact cutwidth for larger sparse graphs: suppresses degree-2 vertices
/// (which leaves cutwidth unchanged), then runs the DP on each remaining
/// component of the resulting multigraph. Components above `limits.max_vertices`
/// (up to 128 vertices) are solved instead by an exact search over prefix sets
/// of bounded cut, subject to `limits.search_states`. The ordering is deterministic but not
/// necessarily lexicographically smallest.
LinearArrangement cutwidth_reduced(const Graph& g, const CutwidthLimits& limits = {});

/// Simplicial overlap of the piecewise-linear sweep map induced by `arrangement`:
/// the largest number of closed simplices whose image contains a level.
int sweep_overlap(const Graph& g, const LinearArrangement& arrangement);

struct To1Bounds {
  int lower = 0;
  int upper = 0;
  int realized_overlap = 0;
};

To1Bounds to1_bounds(const Graph& g, const CutwidthLimits& limits = {});

}  // namespace overlap
