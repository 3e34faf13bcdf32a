#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace testing_support {

namespace {

std::map<Vertex, int> positions(const std::vector<Vertex>& order) {
  std::map<Vertex, int> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i) + 1;
  return pos;
}

}  // namespace

std::vector<int> gap_cuts(const SimplicialComplex& g, const std::vector<Vertex>& order) {
  auto pos = positions(order);
  std::vector<int> cuts(order.size(), 0);
  for (std::size_t i = 1; i < order.size(); ++i) {
    for (const auto& e : g.edges()) {
      const int a = std::min(pos[e[0]], pos[e[1]]);
      const int b = std::max(pos[e[0]], pos[e[1]]);
      if (a <= static_cast<int>(i) && static_cast<int>(i) < b) ++cuts[i];
    }
  }
  return cuts;
}

int cutwidth_by_permutations(const SimplicialComplex& g) {
  std::vector<Vertex> order = g.vertices();
  if (order.empty()) return 0;
  int best = 1 << 30;
  do {
    auto cuts = gap_cuts(g, order);
    best = std::min(best, *std::max_element(cuts.begin(), cuts.end()));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

int sweep_overlap_by_levels(const SimplicialComplex& g, const std::vector<Vertex>& order) {
  auto pos = positions(order);
  int best = 0;
  // Levels are doubled to stay integral: 2, 3, ..., 2n.
  for (int z2 = 2; z2 <= 2 * static_cast<int>(order.size()); ++z2) {
    int count = 0;
    for (const auto& s : g.simplices()) {
      int lo = 1 << 30, hi = -1;
      for (Vertex v : s) {
        lo = std::min(lo, 2 * pos[v]);
        hi = std::max(hi, 2 * pos[v]);
      }
      if (lo <= z2 && z2 <= hi) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

namespace {

int largest_component_without(const SimplicialComplex& g, const std::set<Vertex>& removed) {
  std::set<Vertex> seen;
  int largest = 0;
  for (Vertex s : g.vertices()) {
    if (removed.count(s) || seen.count(s)) continue;
    int size = 0;
    std::vector<Vertex> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex w : g.neighbors(v)) {
        if (!removed.count(w) && seen.insert(w).second) stack.push_back(w);
      }
    }
    largest = std::max(largest, size);
  }
  return largest;
}

}  // namespace

int separation_by_subsets(const SimplicialComplex& g) {
  const auto& vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  int best = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::set<Vertex> removed;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) removed.insert(vs[i]);
    if (static_cast<int>(removed.size()) >= best) continue;
    if (2 * largest_component_without(g, removed) <= n) best = static_cast<int>(removed.size());
  }
  return best;
}

Rational boundary_ratio(const SimplicialComplex& g, const std::vector<Vertex>& a) {
  std::set<Vertex> inside(a.begin(), a.end());
  std::set<Vertex> boundary;
  for (Vertex v : a)
    for (Vertex w : g.neighbors(v))
      if (!inside.count(w)) boundary.insert(w);
  return Rational(static_cast<long long>(boundary.size()), static_cast<long long>(inside.size()));
}

bool cheeger_by_subsets(const SimplicialComplex& g, Rational& value) {
  const auto& vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  bool found = false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Vertex> a;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) a.push_back(vs[i]);
    if (2 * static_cast<int>(a.size()) > n) continue;
    const Rational r = boundary_ratio(g, a);
    if (!found || r < value) value = r;
    found = true;
  }
  return found;
}

long long meeting_number(const SimplicialComplex& k) {
  long long best = 0;
  for (const auto& a : k.simplices()) {
    long long count = 0;
    for (const auto& b : k.simplices()) {
      bool meet = false;
      for (Vertex v : a) meet = meet || std::find(b.begin(), b.end(), v) != b.end();
      count += meet;
    }
    best = std::max(best, count);
  }
  return best;
}

bool words_adjacent(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (j == k) continue;
      bool ok = a[j].size() == b[j].size() + 1 && a[j].substr(0, b[j].size()) == b[j] &&
                b[k].size() == a[k].size() + 1 && b[k].substr(0, a[k].size()) == a[k];
      for (std::size_t i = 0; ok && i < a.size(); ++i)
        if (i != j && i != k && a[i] != b[i]) ok = false;
      if (ok) return true;
    }
  }
  return false;
}

std::string code_prefix(long long k, int i, int ell, int d) {
  std::string block;
  for (int b = ell - 1; b >= 0; --b) block.push_back(k >> b & 1 ? '1' : '0');
  std::string all;
  for (int c = 0; c <= d; ++c) all += block;
  return all.substr(0, static_cast<std::size_t>(i));
}

std::vector<std::string> lattice_words(const SimplicialComplex& z, const overlap::LatticeFunction& f, int ell, int d) {
  std::vector<std::string> w(d + 1);
  for (const auto& [idx, weight] : f.terms) {
    const auto& a = z.simplices()[idx];
    w[a.size() - 1] = code_prefix(*std::min_element(a.begin(), a.end()), weight, ell, d);
  }
  return w;
}

}  // namespace testing_support
