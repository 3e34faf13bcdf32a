#include <catch_amalgamated.hpp>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "overlap/cutwidth.hpp"
#include "overlap/error.hpp"

using namespace overlap;
using namespace testing_support;

namespace {

Graph graph_of(const SimplicialComplex& c) { return Graph::from_complex(c); }

void check_arrangement(const Graph& g, const SimplicialComplex& c, const LinearArrangement& a) {
  REQUIRE(a.order.size() == static_cast<std::size_t>(g.size()));
  CHECK(a.cut_profile == gap_cuts(c, a.order));
  if (!a.cut_profile.empty()) {
    CHECK(a.cut_profile[0] == 0);
    CHECK(a.width == *std::max_element(a.cut_profile.begin(), a.cut_profile.end()));
  }
  CHECK(a.width <= g.edge_count());
}

}  // namespace

TEST_CASE("cutwidth examples") {
  CHECK(cutwidth_exact(graph_of(path(4))).width == 1);
  CHECK(cutwidth_exact(graph_of(cycle(4))).width == 2);
  CHECK(cutwidth_exact(graph_of(complete(5))).width == 6);
  CHECK(cutwidth_bruteforce(graph_of(complete(4))).width == 4);
  CHECK(cutwidth_bruteforce(graph_of(star(3))).width == 2);
  CHECK(cutwidth_bruteforce(graph_of(path(2))).width == 1);
}

TEST_CASE("cutwidth size limits") {
  CHECK_THROWS_AS(cutwidth_exact(graph_of(path(25))), SizeLimitError);
  CHECK_THROWS_AS(cutwidth_bruteforce(graph_of(path(10))), SizeLimitError);
  CHECK_NOTHROW(cutwidth_exact(graph_of(path(20)), {20, 1}));
}

TEST_CASE("DP returns the lexicographically smallest optimal order") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const auto c = random_graph(n, 0.5, rng);
    const Graph g = graph_of(c);
    const auto dp = cutwidth_exact(g);
    const auto brute = cutwidth_bruteforce(g);
    check_arrangement(g, c, dp);
    check_arrangement(g, c, brute);
    CHECK(dp.width == cutwidth_by_permutations(c));
    CHECK(dp.order == brute.order);
  }
}

TEST_CASE("heuristic gives valid upper bounds and is seed-deterministic") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    CHECK(cutwidth_heuristic(graph_of(path(4)), seed).width == 1);
    const auto c4 = cutwidth_heuristic(graph_of(cycle(4)), seed);
    CHECK(c4.width >= 2);
    CHECK(c4.width <= 4);
    CHECK(cutwidth_heuristic(graph_of(complete(5)), seed).width >= 6);
  }
  std::mt19937_64 rng(5);
  const auto c = random_graph(14, 0.3, rng);
  const Graph g = graph_of(c);
  const auto a = cutwidth_heuristic(g, 42);
  const auto b = cutwidth_heuristic(g, 42);
  CHECK(a.order == b.order);
  check_arrangement(g, c, a);
  CHECK(a.width >= cutwidth_exact(g).width);
}

TEST_CASE("degree-2 suppression keeps the exact cutwidth") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const auto c = random_graph(n, 0.25, rng);
    const Graph g = graph_of(c);
    const auto reduced = cutwidth_reduced(g);
    check_arrangement(g, c, reduced);
    CHECK(reduced.width == cutwidth_exact(g).width);
  }
  // A long subdivided cycle far beyond the dense DP limit.
  const Graph big = graph_of(cycle(200));
  CHECK(cutwidth_reduced(big).width == 2);
}

TEST_CASE("prefix search beyond the DP limit is exact") {
  std::mt19937_64 rng(5);
  CutwidthLimits tiny;
  tiny.max_vertices = 3;
  for (int t = 0; t < 80; ++t) {
    const int n = 4 + static_cast<int>(rng() % 13);
    const auto c = random_graph(n, 0.15 + 0.05 * (t % 6), rng);
    const Graph g = graph_of(c);
    const auto searched = cutwidth_reduced(g, tiny);
    check_arrangement(g, c, searched);
    CHECK(searched.width == cutwidth_exact(g).width);
  }
  CHECK(cutwidth_reduced(graph_of(grid(4, 6)), tiny).width == cutwidth_exact(graph_of(grid(4, 6))).width);
  CHECK(cutwidth_reduced(graph_of(cube_graph(4)), tiny).width == cutwidth_exact(graph_of(cube_graph(4))).width);

  tiny.search_states = 1;
  CHECK_THROWS_AS(cutwidth_reduced(graph_of(complete(9)), tiny), SizeLimitError);
}

TEST_CASE("sweep overlap") {
  const Graph p3 = graph_of(path(3));
  CHECK(sweep_overlap(p3, arrangement_from_order(p3, std::vector<int>{0, 1, 2})) == 3);
  const Graph k2 = graph_of(path(2));
  CHECK(sweep_overlap(k2, arrangement_from_order(k2, std::vector<int>{0, 1})) == 2);
  const Graph isolated = graph_of(SimplicialComplex::from_simplices({{0}, {1}, {2}}));
  CHECK(sweep_overlap(isolated, arrangement_from_order(isolated, std::vector<int>{0, 1, 2})) == 1);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 80; ++t) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto c = random_graph(n, 0.4, rng);
    const Graph g = graph_of(c);
    const auto best = cutwidth_exact(g);
    const int overlap = sweep_overlap(g, best);
    CHECK(overlap == sweep_overlap_by_levels(c, best.order));
    const auto bounds = to1_bounds(g);
    CHECK(bounds.lower == best.width);
    CHECK(bounds.upper == best.width + c.degree() + 1);
    CHECK(bounds.lower <= bounds.realized_overlap);
    CHECK(bounds.realized_overlap <= bounds.upper);
  }
}

TEST_CASE("to1 bounds examples") {
  auto b = to1_bounds(graph_of(path(4)));
  CHECK(b.lower == 1);
  CHECK(b.upper == 4);
  CHECK(b.realized_overlap <= 4);
  b = to1_bounds(graph_of(cycle(4)));
  CHECK(b.lower == 2);
  CHECK(b.upper == 5);
  b = to1_bounds(graph_of(complete(4)));
  CHECK(b.lower == 4);
  CHECK(b.upper == 8);
}

TEST_CASE("subgraph monotonicity") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const auto c = random_graph(n, 0.5, rng);
    std::vector<Simplex> kept;
    for (Vertex v : c.vertices())
      if (rng() % 4) kept.push_back({v});
    for (const auto& e : c.edges()) {
      const bool both = std::find(kept.begin(), kept.end(), Simplex{e[0]}) != kept.end() &&
                        std::find(kept.begin(), kept.end(), Simplex{e[1]}) != kept.end();
      if (both && rng() % 3) kept.push_back(e);
    }
    const auto h = SimplicialComplex::from_simplices(kept);
    CHECK(cutwidth_exact(graph_of(h)).width <= cutwidth_exact(graph_of(c)).width);
  }
}

TEST_CASE("threads do not change results") {
  std::mt19937_64 rng(29);
  const auto c = random_graph(9, 0.4, rng);
  const Graph g = graph_of(c);
  const auto one = cutwidth_bruteforce(g, 1);
  const auto many = cutwidth_bruteforce(g, 8);
  CHECK(one.order == many.order);
  CHECK(cutwidth_exact(g, {24, 1}).order == cutwidth_exact(g, {24, 8}).order);
}
