#include <catch_amalgamated.hpp>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "overlap/error.hpp"
#include "overlap/profiles.hpp"

using namespace overlap;
using namespace testing_support;

namespace {

std::vector<int> values(const ProfileTable& t) {
  std::vector<int> out;
  for (const auto& e : t.entries) out.push_back(e.value);
  return out;
}

/// Profile over every subcomplex (vertex subset plus any subset of its edges).
std::vector<int> all_subcomplex_profile(const SimplicialComplex& host, Invariant inv, int r_max) {
  const auto& vs = host.vertices();
  const int n = static_cast<int>(vs.size());
  std::vector<int> best(r_max + 1, 0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> u;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) u.push_back(vs[i]);
    if (static_cast<int>(u.size()) > r_max) continue;
    const auto induced = induced_subcomplex(host, u);
    const auto& edges = induced.edges();
    for (std::uint32_t keep = 0; keep < (1u << edges.size()); ++keep) {
      std::vector<Simplex> s;
      for (Vertex v : u) s.push_back({v});
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (keep >> e & 1) s.push_back(edges[e]);
      const auto sub = SimplicialComplex::from_simplices(s);
      const int value = inv == Invariant::cutwidth ? cutwidth_by_permutations(sub) : separation_by_subsets(sub);
      best[u.size()] = std::max(best[u.size()], value);
    }
  }
  for (int r = 1; r <= r_max; ++r) best[r] = std::max(best[r], best[r - 1]);
  return best;
}

}  // namespace

TEST_CASE("profile examples") {
  auto t = profile(path(10), Invariant::cutwidth, 5, ProfileMode::exact);
  CHECK(values(t) == std::vector<int>{0, 0, 1, 1, 1, 1});
  CHECK(t.all_exact());

  t = profile(grid(3, 3), Invariant::separation, 9, ProfileMode::exact);
  CHECK(t.entries[9].value == 3);

  t = profile(cycle(6), Invariant::cutwidth, 6, ProfileMode::exact);
  CHECK(values(t) == std::vector<int>{0, 0, 1, 1, 1, 1, 2});
  CHECK(t.entries[6].witness == std::vector<Vertex>{0, 1, 2, 3, 4, 5});

  CHECK_THROWS_AS(profile(path(17), Invariant::cutwidth, 3, ProfileMode::exact), SizeLimitError);
}

TEST_CASE("induced profiles equal profiles over all subcomplexes") {
  std::mt19937_64 rng(43);
  std::vector<SimplicialComplex> hosts = {cycle(6), path(5), complete(4), star(3), grid(2, 3)};
  for (int t = 0; t < 4; ++t) hosts.push_back(random_graph(6, 0.4, rng));
  for (const auto& host : hosts) {
    const int n = static_cast<int>(host.vertex_count());
    for (Invariant inv : {Invariant::cutwidth, Invariant::separation}) {
      const auto table = profile(host, inv, n, ProfileMode::exact);
      CHECK(values(table) == all_subcomplex_profile(host, inv, n));
    }
  }
}

TEST_CASE("profiles are monotone and thread independent") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 6; ++t) {
    const auto host = random_graph(9, 0.35, rng);
    for (Invariant inv : {Invariant::cutwidth, Invariant::separation}) {
      ProfileOptions one, many;
      many.threads = 8;
      const auto a = profile(host, inv, 9, ProfileMode::exact, {}, one);
      const auto b = profile(host, inv, 9, ProfileMode::exact, {}, many);
      for (int r = 1; r <= 9; ++r) CHECK(a.entries[r].value >= a.entries[r - 1].value);
      for (int r = 0; r <= 9; ++r) {
        CHECK(a.entries[r].value == b.entries[r].value);
        CHECK(a.entries[r].witness == b.entries[r].witness);
      }
    }
  }
}

TEST_CASE("candidate profiles are tagged lower bounds") {
  const auto host = grid(3, 4);
  const std::vector<std::vector<Vertex>> candidates = {{0, 1, 2}, {0, 1, 4, 5}, {0, 1, 2, 3, 4, 5, 6, 7}};
  const auto t = profile(host, Invariant::cutwidth, 12, ProfileMode::candidates, candidates);
  const auto exact = profile(host, Invariant::cutwidth, 12, ProfileMode::exact);
  for (int r = 0; r <= 12; ++r) {
    CHECK(t.entries[r].mode == EntryMode::lower_bound);
    CHECK(t.entries[r].value <= exact.entries[r].value);
  }
  CHECK(t.entries[4].value == 2);
  const std::vector<std::vector<Vertex>> bad = {{0, 99}};
  CHECK_THROWS_AS(profile(host, Invariant::cutwidth, 3, ProfileMode::candidates, bad), PreconditionError);
}

TEST_CASE("cwsep recursion") {
  auto cw = profile(path(10), Invariant::cutwidth, 10, ProfileMode::exact);
  auto sep = profile(path(10), Invariant::separation, 10, ProfileMode::exact);
  CHECK(verify_cwsep(cw, sep, 2).passed());

  const auto g = grid(3, 3);
  cw = profile(g, Invariant::cutwidth, 9, ProfileMode::exact);
  sep = profile(g, Invariant::separation, 9, ProfileMode::exact);
  CHECK(verify_cwsep(cw, sep, 4).passed());

  auto corrupted = cw;
  corrupted.entries[6].value = 99;
  const Report report = verify_cwsep(corrupted, sep, 4);
  CHECK_FALSE(report.passed());
  for (const auto& row : report.rows) {
    if (row.binding && !row.pass) CHECK(row.check == "cwsep r=6");
  }

  auto lower = cw;
  lower.entries[2].mode = EntryMode::lower_bound;
  CHECK_THROWS_AS(verify_cwsep(lower, sep, 4), PreconditionError);
  const auto other = profile(path(9), Invariant::separation, 9, ProfileMode::exact);
  CHECK_THROWS_AS(verify_cwsep(cw, other, 4), PreconditionError);
  auto shorter = sep;
  shorter.entries.pop_back();
  CHECK_THROWS_AS(verify_cwsep(cw, shorter, 4), PreconditionError);
}

TEST_CASE("expander certificates") {
  std::vector<SimplicialComplex> cycles = {cycle(4), cycle(6), cycle(8)};
  auto result = expander_certificate(cycles, Rational(1, 2));
  CHECK_FALSE(result.certificate);
  CHECK_FALSE(result.refusal.empty());

  std::vector<SimplicialComplex> cliques = {complete(4), complete(5), complete(6)};
  result = expander_certificate(cliques, Rational(1, 100));
  CHECK_FALSE(result.certificate);

  std::vector<SimplicialComplex> two = {cycle(4), cycle(6)};
  result = expander_certificate(two, Rational(1, 4));
  REQUIRE(result.certificate);
  CHECK(result.certificate->delta == 2);
  for (const auto& m : result.certificate->members) {
    const int cw = cutwidth_by_permutations(two[m.index]);
    CHECK(m.cutwidth == cw);
    CHECK(Rational(cw) >= Rational(1, 4) * m.size);
  }

  std::vector<SimplicialComplex> shrinking = {cycle(6), cycle(4)};
  CHECK_FALSE(expander_certificate(shrinking, Rational(1, 4)).certificate);
  CHECK(expander_certificate(cliques, Rational(1, 100), 5).certificate);
  CHECK_FALSE(expander_certificate(cliques, Rational(1, 100), 4).certificate);
}

TEST_CASE("expander extraction") {
  auto result = extract_expander(path(4), Rational(3, 4));
  REQUIRE(result.success);
  CHECK(result.subgraph == SimplicialComplex::from_simplices({{2, 3}}));
  REQUIRE(result.history.size() == 1);
  CHECK(result.history[0].removed == std::vector<Vertex>{0, 1});
  CHECK(result.history[0].cheeger.value == Rational(1, 2));

  result = extract_expander(cycle(4), Rational(1));
  REQUIRE(result.success);
  CHECK(result.subgraph == cycle(4));
  CHECK(result.history.empty());

  result = extract_expander(path(4), Rational(10));
  CHECK_FALSE(result.success);
  CHECK(result.subgraph.vertex_count() <= 1);
}

TEST_CASE("expander chain report") {
  const auto c6 = cycle(6);
  Report report = verify_expander_chain(c6, Rational(1, 3));
  CHECK(report.passed());
  bool hypothesis_row = false;
  for (const auto& row : report.rows) {
    if (row.check.rfind("size hypothesis", 0) == 0) {
      hypothesis_row = true;
      CHECK_FALSE(row.pass);
    }
  }
  CHECK(hypothesis_row);
  CHECK(std::find(report.notes.begin(), report.notes.end(), "hypothesis not met, conclusion not asserted") !=
        report.notes.end());

  CHECK(verify_expander_chain(path(8), Rational(1, 8)).passed());

  const auto cw = profile(c6, Invariant::cutwidth, 6, ProfileMode::exact);
  auto sep = profile(c6, Invariant::separation, 6, ProfileMode::exact);
  for (auto& e : sep.entries) e.value = 0;
  CHECK_FALSE(verify_expander_chain(c6, Rational(1, 3), cw, sep).passed());
}
