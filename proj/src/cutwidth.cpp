#include "overlap/cutwidth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "overlap/error.hpp"
#include "overlap/parallel.hpp"

namespace overlap {

namespace {

constexpr int kDenseCeiling = 28;
constexpr int kBruteForceLimit = 9;
constexpr int kSearchCeiling = 128;

LinearArrangement with_labels(const Graph& g, std::span<const int> order, std::vector<int> cuts) {
  LinearArrangement a;
  a.order.reserve(order.size());
  for (int v : order) a.order.push_back(g.label[v]);
  a.width = cuts.empty() ? 0 : *std::max_element(cuts.begin(), cuts.end());
  a.cut_profile = std::move(cuts);
  return a;
}

/// Subset DP on a (multi)graph with at most kDenseCeiling vertices.
/// Returns the lexicographically smallest optimal order in dense indices.
std::vector<int> dense_dp_order(const Graph& g) {
  const int n = g.size();
  if (n == 0) return {};
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  const std::size_t states = std::size_t{1} << n;

  std::vector<int> wdeg(n);
  for (int v = 0; v < n; ++v) wdeg[v] = g.weighted_degree(v);

  // cut[S] = total multiplicity of edges leaving S.
  std::vector<std::uint16_t> cut(states, 0);
  for (std::size_t s = 1; s < states; ++s) {
    const auto mask = static_cast<std::uint32_t>(s);
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    int inside = 0;
    for (const auto& [w, mult] : g.adjacency[low]) {
      if (rest & (1u << w)) inside += mult;
    }
    cut[s] = static_cast<std::uint16_t>(cut[rest] + wdeg[low] - 2 * inside);
  }

  // best[S] = least achievable maximum cut over the prefixes that extend S.
  std::vector<std::uint16_t> best(states, std::numeric_limits<std::uint16_t>::max());
  best[full] = 0;
  for (std::size_t s = states - 1; s-- > 0;) {
    const auto mask = static_cast<std::uint32_t>(s);
    std::uint16_t b = std::numeric_limits<std::uint16_t>::max();
    std::uint32_t free = full & ~mask;
    while (free) {
      const int v = std::countr_zero(free);
      free &= free - 1;
      const std::uint32_t next = mask | (1u << v);
      b = std::min(b, std::max(cut[next], best[next]));
    }
    best[s] = b;
  }

  const std::uint16_t width = best[0];
  std::vector<int> order;
  std::uint32_t placed = 0;
  for (int step = 0; step < n; ++step) {
    for (int v = 0; v < n; ++v) {
      if (placed & (1u << v)) continue;
      const std::uint32_t next = placed | (1u << v);
      if (std::max(cut[next], best[next]) <= width) {
        order.push_back(v);
        placed = next;
        break;
      }
    }
  }
  if (static_cast<int>(order.size()) != n) throw InternalError("cutwidth DP reconstruction failed");
  return order;
}

std::vector<int> cuts_of(const Graph& g, std::span<const int> order) {
  const int n = g.size();
  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  // diff[i] accumulates +mult when an edge opens after position i-1, -mult when it closes.
  std::vector<int> diff(n + 1, 0);
  for (int v = 0; v < n; ++v) {
    for (const auto& [w, mult] : g.adjacency[v]) {
      if (v < w) {
        const int a = std::min(position[v], position[w]);
        const int b = std::max(position[v], position[w]);
        diff[a + 1] += mult;
        diff[b + 1] -= mult;
      }
    }
  }
  std::vector<int> cuts(n, 0);
  int running = 0;
  for (int i = 0; i < n; ++i) {
    running += diff[i];
    cuts[i] = running;
  }
  return cuts;
}

/// Prefix-set search for sparse components beyond the DP: decides width <= w
/// for increasing w, expanding only prefixes whose cut stays within w.
class BoundedSearch {
 public:
  BoundedSearch(const Graph& g, std::size_t budget) : g_(g), budget_(budget) {
    wdeg_.resize(g.size());
    for (int v = 0; v < g.size(); ++v) wdeg_[v] = g.weighted_degree(v);
  }

  std::optional<std::vector<int>> solve(int width) {
    width_ = width;
    failed_.clear();
    order_.clear();
    Set placed{};
    if (extend(placed, 0)) return order_;
    return std::nullopt;
  }

 private:
  struct Set {
    std::uint64_t lo = 0, hi = 0;
    bool has(int v) const { return v < 64 ? (lo >> v & 1) : (hi >> (v - 64) & 1); }
    void add(int v) { (v < 64 ? lo : hi) |= std::uint64_t{1} << (v & 63); }
    friend bool operator==(const Set&, const Set&) = default;
  };
  struct SetHash {
    std::size_t operator()(const Set& s) const noexcept { return s.lo * 0x9e3779b97f4a7c15ULL ^ (s.hi + (s.lo >> 17)); }
  };

  int change(const Set& placed, int v) const {
    int inside = 0;
    for (const auto& [w, mult] : g_.adjacency[v])
      if (placed.has(w)) inside += mult;
    return wdeg_[v] - 2 * inside;
  }

  bool extend(Set placed, int cut) {
    const std::size_t depth = order_.size();
    // A vertex that does not raise the cut can always be placed next.
    for (bool again = true; again;) {
      again = false;
      for (int v = 0; v < g_.size(); ++v) {
        if (placed.has(v)) continue;
        const int delta = change(placed, v);
        if (delta <= 0) {
          placed.add(v);
          cut += delta;
          order_.push_back(v);
          again = true;
        }
      }
    }
    if (static_cast<int>(order_.size()) == g_.size()) return true;
    if (failed_.count(placed)) {
      order_.resize(depth);
      return false;
    }
    for (int v = 0; v < g_.size(); ++v) {
      if (placed.has(v)) continue;
      const int next = cut + change(placed, v);
      if (next > width_) continue;
      Set grown = placed;
      grown.add(v);
      const std::size_t mark = order_.size();
      order_.push_back(v);
      if (extend(grown, next)) return true;
      order_.resize(mark);
    }
    failed_.insert(placed);
    if (failed_.size() > budget_) {
      throw SizeLimitError("cutwidth_reduced: prefix search exceeded " + std::to_string(budget_) + " states");
    }
    order_.resize(depth);
    return false;
  }

  const Graph& g_;
  std::size_t budget_;
  std::vector<int> wdeg_;
  int width_ = 0;
  std::unordered_set<Set, SetHash> failed_;
  std::vector<int> order_;
};

std::vector<int> searched_order(const Graph& g, std::size_t budget) {
  const int n = g.size();
  if (n > kSearchCeiling) {
    throw SizeLimitError("cutwidth_reduced: a reduced component has " + std::to_string(n) +
                         " vertices, above the search limit of " + std::to_string(kSearchCeiling));
  }
  auto upper = dense_order(g, cutwidth_heuristic(g, 0));
  const auto upper_cuts = cuts_of(g, upper);
  const int upper_width = *std::max_element(upper_cuts.begin(), upper_cuts.end());
  int lower = 0;
  for (int v = 0; v < n; ++v) lower = std::max(lower, (g.weighted_degree(v) + 1) / 2);
  BoundedSearch search(g, budget);
  for (int w = lower; w < upper_width; ++w) {
    if (auto order = search.solve(w)) return *order;
  }
  return upper;
}

}  // namespace

LinearArrangement arrangement_from_order(const Graph& g, std::span<const int> order) {
  if (static_cast<int>(order.size()) != g.size()) throw PreconditionError("ordering size mismatch");
  std::vector<char> seen(g.size(), 0);
  for (int v : order) {
    if (v < 0 || v >= g.size() || seen[v]) throw PreconditionError("ordering is not a bijection");
    seen[v] = 1;
  }
  return with_labels(g, order, cuts_of(g, order));
}

std::vector<int> dense_order(const Graph& g, const LinearArrangement& arrangement) {
  std::unordered_map<Vertex, int> dense;
  for (int i = 0; i < g.size(); ++i) dense.emplace(g.label[i], i);
  std::vector<int> order;
  order.reserve(arrangement.order.size());
  for (Vertex v : arrangement.order) {
    auto it = dense.find(v);
    if (it == dense.end()) throw PreconditionError("arrangement names unknown vertex " + std::to_string(v));
    order.push_back(it->second);
  }
  if (static_cast<int>(order.size()) != g.size()) throw PreconditionError("arrangement size mismatch");
  return order;
}

LinearArrangement cutwidth_exact(const Graph& g, const CutwidthLimits& limits) {
  const int limit = std::min(limits.max_vertices, kDenseCeiling);
  if (g.size() > limit) {
    throw SizeLimitError("cutwidth_exact: " + std::to_string(g.size()) + " vertices exceed the DP limit of " +
                         std::to_string(limit) + "; use cutwidth_heuristic for an upper bound");
  }
  const auto order = dense_dp_order(g);
  return arrangement_from_order(g, order);
}

LinearArrangement cutwidth_bruteforce(const Graph& g, int threads) {
  const int n = g.size();
  if (n > kBruteForceLimit) throw SizeLimitError("cutwidth_bruteforce accepts at most 9 vertices");
  if (n == 0) return {};

  struct Best {
    int width = std::numeric_limits<int>::max();
    std::vector<int> order;
  };
  auto better = [](Best a, Best b) {
    if (b.width < a.width || (b.width == a.width && !b.order.empty() && b.order < a.order)) return b;
    return a;
  };

  // Enumerate every ordering whose first vertex lies in [begin, end).
  auto block = [&](std::uint64_t begin, std::uint64_t end) {
    Best best;
    std::vector<int> order;
    std::vector<char> used(n, 0);
    std::vector<int> wdeg(n);
    for (int v = 0; v < n; ++v) wdeg[v] = g.weighted_degree(v);
    auto recurse = [&](auto&& self, int cut, int width) -> void {
      if (static_cast<int>(order.size()) == n) {
        if (width < best.width) {
          best.width = width;
          best.order = order;
        }
        return;
      }
      for (int v = 0; v < n; ++v) {
        if (used[v]) continue;
        if (order.empty() && (static_cast<std::uint64_t>(v) < begin || static_cast<std::uint64_t>(v) >= end)) continue;
        int inside = 0;
        for (const auto& [w, mult] : g.adjacency[v]) {
          if (used[w]) inside += mult;
        }
        // Gap in front of v carries the current cut.
        const int next_width = std::max(width, cut);
        used[v] = 1;
        order.push_back(v);
        self(self, cut + wdeg[v] - 2 * inside, next_width);
        order.pop_back();
        used[v] = 0;
      }
    };
    recurse(recurse, 0, 0);
    return best;
  };

  Best best = parallel_reduce(static_cast<std::uint64_t>(n), threads, Best{}, block, better);
  return arrangement_from_order(g, best.order);
}

LinearArrangement cutwidth_heuristic(const Graph& g, std::uint64_t seed, int budget) {
  const int n = g.size();
  if (n == 0) return {};

  std::vector<int> natural(n);
  std::iota(natural.begin(), natural.end(), 0);

  // Breadth-first order, each component started from its lowest-degree vertex.
  std::vector<int> bfs;
  {
    std::vector<char> seen(n, 0);
    for (const auto& comp : connected_components(g)) {
      int start = comp.front();
      for (int v : comp) {
        if (g.adjacency[v].size() < g.adjacency[start].size()) start = v;
      }
      std::vector<int> queue{start};
      seen[start] = 1;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& [w, mult] : g.adjacency[queue[head]]) {
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
        }
      }
      bfs.insert(bfs.end(), queue.begin(), queue.end());
    }
  }

  auto width_of = [&](const std::vector<int>& order) {
    const auto c = cuts_of(g, order);
    return *std::max_element(c.begin(), c.end());
  };
  std::vector<int> order = width_of(bfs) < width_of(natural) ? bfs : natural;
  if (n < 2) return arrangement_from_order(g, order);

  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<int> cuts = cuts_of(g, order);
  const auto max_cut = static_cast<std::size_t>(g.edge_count());
  std::vector<int> histogram(max_cut + 1, 0);
  for (int c : cuts) ++histogram[c];
  auto current_width = [&] {
    for (std::size_t c = max_cut + 1; c-- > 0;) {
      if (histogram[c]) return static_cast<int>(c);
    }
    return 0;
  };

  std::vector<int> best_order = order;
  int best_width = current_width();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t0 = 2.0;
  const double t1 = 0.05;
  for (int step = 0; step < budget; ++step) {
    const double t = t0 * std::pow(t1 / t0, static_cast<double>(step) / std::max(1, budget - 1));
    const int i = pick(rng);
    const int a = order[i];
    const int b = order[i + 1];
    // Only the gap between positions i and i+1 changes.
    int b_left = 0;
    for (const auto& [w, mult] : g.adjacency[b]) {
      if (position[w] < i) b_left += mult;
    }
    const int old_cut = cuts[i + 1];
    const int new_cut = cuts[i] + g.weighted_degree(b) - 2 * b_left;
    const double delta = static_cast<double>(new_cut) * new_cut - static_cast<double>(old_cut) * old_cut;
    if (delta <= 0 || unit(rng) < std::exp(-delta / t)) {
      std::swap(order[i], order[i + 1]);
      position[a] = i + 1;
      position[b] = i;
      --histogram[old_cut];
      ++histogram[new_cut];
      cuts[i + 1] = new_cut;
      const int w = current_width();
      if (w < best_width) {
        best_width = w;
        best_order = order;
      }
    }
  }
  return arrangement_from_order(g, best_order);
}

LinearArrangement cutwidth_reduced(const Graph& g, const CutwidthLimits& limits) {
  const int n = g.size();
  std::vector<std::map<int, int>> adj(n);
  for (int v = 0; v < n; ++v) {
    for (const auto& [w, mult] : g.adjacency[v]) adj[v][w] = mult;
  }

  // Suppress vertices of weighted degree 2 with two distinct neighbours.
  struct Suppressed {
    int vertex, left, right;
  };
  std::vector<Suppressed> suppressed;
  std::vector<char> alive(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      if (!alive[x] || adj[x].size() != 2) continue;
      auto it = adj[x].begin();
      const auto [u, mu] = *it++;
      const auto [w, mw] = *it;
      if (mu != 1 || mw != 1) continue;
      adj[u].erase(x);
      adj[w].erase(x);
      adj[x].clear();
      ++adj[u][w];
      ++adj[w][u];
      alive[x] = 0;
      suppressed.push_back({x, u, w});
      changed = true;
    }
  }

  Graph reduced;
  std::vector<int> kept;
  std::vector<int> position(n, -1);
  for (int v = 0; v < n; ++v) {
    if (alive[v]) {
      position[v] = static_cast<int>(kept.size());
      kept.push_back(v);
    }
  }
  reduced.label.resize(kept.size());
  reduced.adjacency.resize(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    reduced.label[i] = static_cast<Vertex>(kept[i]);
    for (const auto& [w, mult] : adj[kept[i]]) reduced.adjacency[i].emplace_back(position[w], mult);
  }

  const int limit = std::min(limits.max_vertices, kDenseCeiling);
  std::vector<int> order;  // dense indices of g
  int reduced_width = 0;
  for (const auto& comp : connected_components(reduced)) {
    const Graph part = reduced.induced(comp);
    const auto local = static_cast<int>(comp.size()) > limit ? searched_order(part, limits.search_states)
                                                              : dense_dp_order(part);
    const auto c = cuts_of(part, local);
    reduced_width = std::max(reduced_width, *std::max_element(c.begin(), c.end()));
    for (int v : local) order.push_back(part.label[v]);
  }

  // Reinsert suppressed vertices right after the earlier of their two neighbours.
  for (auto it = suppressed.rbegin(); it != suppressed.rend(); ++it) {
    const auto pu = std::find(order.begin(), order.end(), it->left);
    const auto pw = std::find(order.begin(), order.end(), it->right);
    order.insert(std::min(pu, pw) + 1, it->vertex);
  }

  auto result = arrangement_from_order(g, order);
  if (result.width != reduced_width) throw InternalError("degree-2 suppression changed the cutwidth");
  return result;
}

int sweep_overlap(const Graph& g, const LinearArrangement& arrangement) {
  const auto order = dense_order(g, arrangement);
  const int n = g.size();
  if (n == 0) return 0;
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  const auto cuts = cuts_of(g, order);
  int overlap = 0;
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    int left = 0;
    for (const auto& [w, mult] : g.adjacency[v]) {
      if (position[w] < i) left += mult;
    }
    // At the integer level: the vertex, its edges, and edges passing strictly over it.
    const int strictly_crossing = cuts[i] - left;
    overlap = std::max(overlap, 1 + g.weighted_degree(v) + strictly_crossing);
    // Half-integer level just before position i.
    overlap = std::max(overlap, cuts[i]);
  }
  return overlap;
}

To1Bounds to1_bounds(const Graph& g, const CutwidthLimits& limits) {
  const auto best = cutwidth_exact(g, limits);
  To1Bounds b;
  b.lower = best.width;
  b.upper = best.width + g.max_degree() + 1;
  b.realized_overlap = sweep_overlap(g, best);
  return b;
}

}  // namespace overlap
