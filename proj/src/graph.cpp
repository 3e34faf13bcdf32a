#include "overlap/graph.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "overlap/error.hpp"

namespace overlap {

std::int64_t Graph::edge_count() const {
  std::int64_t twice = 0;
  for (const auto& row : adjacency) {
    for (const auto& [w, mult] : row) twice += mult;
  }
  return twice / 2;
}

int Graph::weighted_degree(int v) const {
  int d = 0;
  for (const auto& [w, mult] : adjacency[v]) d += mult;
  return d;
}

int Graph::max_degree() const {
  std::size_t d = 0;
  for (const auto& row : adjacency) d = std::max(d, row.size());
  return static_cast<int>(d);
}

bool Graph::adjacent(int u, int v) const {
  const auto& row = adjacency[u];
  auto it = std::lower_bound(row.begin(), row.end(), std::pair<int, int>{v, 0});
  return it != row.end() && it->first == v;
}

std::uint64_t Graph::neighbor_mask(int v) const {
  std::uint64_t m = 0;
  for (const auto& [w, mult] : adjacency[v]) m |= std::uint64_t{1} << w;
  return m;
}

Graph Graph::from_complex(const SimplicialComplex& complex) {
  Graph g;
  g.label = complex.vertices();
  std::unordered_map<Vertex, int> dense;
  for (int i = 0; i < g.size(); ++i) dense.emplace(g.label[i], i);
  g.adjacency.resize(g.label.size());
  for (const auto& e : complex.edges()) {
    const int a = dense.at(e[0]);
    const int b = dense.at(e[1]);
    g.adjacency[a].emplace_back(b, 1);
    g.adjacency[b].emplace_back(a, 1);
  }
  for (auto& row : g.adjacency) std::sort(row.begin(), row.end());
  return g;
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Graph g;
  g.label.resize(n);
  for (int i = 0; i < n; ++i) g.label[i] = i;
  std::vector<std::map<int, int>> rows(n);
  for (const auto& [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw MalformedInput("bad edge");
    rows[a][b] = 1;
    rows[b][a] = 1;
  }
  g.adjacency.resize(n);
  for (int i = 0; i < n; ++i) g.adjacency[i].assign(rows[i].begin(), rows[i].end());
  return g;
}

Graph Graph::induced(std::span<const int> dense_vertices) const {
  std::vector<int> keep(dense_vertices.begin(), dense_vertices.end());
  std::sort(keep.begin(), keep.end());
  std::vector<int> position(adjacency.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) position[keep[i]] = static_cast<int>(i);
  Graph g;
  g.adjacency.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    g.label.push_back(label[keep[i]]);
    for (const auto& [w, mult] : adjacency[keep[i]]) {
      if (position[w] >= 0) g.adjacency[i].emplace_back(position[w], mult);
    }
  }
  return g;
}

SimplicialComplex Graph::to_complex() const {
  std::vector<Simplex> simplices;
  for (int v = 0; v < size(); ++v) {
    simplices.push_back({label[v]});
    for (const auto& [w, mult] : adjacency[v]) {
      if (v < w) simplices.push_back({label[v], label[w]});
    }
  }
  return SimplicialComplex::from_simplices(simplices);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (const auto& [w, mult] : g.adjacency[v]) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

}  // namespace overlap
