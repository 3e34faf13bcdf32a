#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "overlap/error.hpp"
#include "overlap/horocyclic.hpp"

using namespace overlap;
using namespace testing_support;

namespace {

HorocyclicVertex words(std::vector<std::string> w) { return HorocyclicVertex{std::move(w)}; }

const SimplicialComplex& triangle() {
  static const SimplicialComplex t = SimplicialComplex::from_simplices({{0, 1, 2}});
  return t;
}

const SimplicialComplex& edge() {
  static const SimplicialComplex e = SimplicialComplex::from_simplices({{0, 1}});
  return e;
}

std::uint32_t index_of(const SimplicialComplex& z, Simplex s) { return static_cast<std::uint32_t>(*z.find(s)); }

}  // namespace

TEST_CASE("binary codes") {
  CHECK(binary_code(5, 18, 7, 3) == "000010100001010000");
  CHECK(binary_code(0, 5, 3, 2) == "00000");
  CHECK(binary_code(3, 4, 2, 1) == "1111");
  CHECK(binary_code(1, 0, 1, 1).empty());
  CHECK_THROWS_AS(binary_code(4, 2, 2, 1), EncodingError);
  for (int k = 0; k < 16; ++k)
    for (int i = 0; i <= 12; ++i) CHECK(binary_code(k, i, 4, 2) == code_prefix(k, i, 4, 2));
}

TEST_CASE("horocyclic vertices and adjacency") {
  const auto h = build_H_ell(1, 1);
  CHECK(h.labels.size() == 12);
  CHECK(horocyclic_adjacent(words({"0", "1"}), words({"", "10"})));
  CHECK_FALSE(horocyclic_adjacent(words({"0", "1"}), words({"11", ""})));
  CHECK_FALSE(horocyclic_adjacent(words({"0", "1"}), words({"1", "0"})));
  CHECK(horocyclic_adjacent(words({"0", "1"}), words({"00", ""})));
  CHECK(to_string(words({"", "10"})) == "(,10)");
  CHECK(parse_horocyclic_vertex("(,10)") == words({"", "10"}));
  CHECK(parse_horocyclic_vertex("(01,1,)") == words({"01", "1", ""}));

  for (auto [d, ell] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}}) {
    const auto hd = build_H_ell(d, ell);
    CHECK(hd.complex.degree() <= 2 * d * (d + 1));
    CHECK(std::is_sorted(hd.labels.begin(), hd.labels.end(), horocyclic_less));
    const int n = static_cast<int>(hd.labels.size());
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const bool rule = words_adjacent(hd.labels[a].words, hd.labels[b].words);
        CHECK(rule == horocyclic_adjacent(hd.labels[a], hd.labels[b]));
        CHECK(rule == hd.complex.contains(Simplex{a, b}));
      }
    }
  }
  CHECK_THROWS_AS(build_H_ell(2, 4, 100), SizeLimitError);
}

TEST_CASE("lattice subdivision counts") {
  const auto k2 = build_D_ell(edge(), 1, 1);
  CHECK(k2.vertex_count() == 5);

  const auto tri = build_D_ell(triangle(), 2, 2);
  const std::set<std::uint32_t> chain = {index_of(triangle(), {0}), index_of(triangle(), {0, 1}),
                                         index_of(triangle(), {0, 1, 2})};
  int inside = 0;
  for (const auto& f : tri.functions) {
    bool ok = true;
    for (const auto& [idx, w] : f.terms) ok = ok && chain.count(idx);
    inside += ok;
  }
  CHECK(inside == 28);
  CHECK(tri.dimension() == 2);

  const auto point = build_D_ell(SimplicialComplex::from_simplices({{0}}), 1, 0);
  CHECK(point.vertex_count() == 1);

  // Chain-support uniqueness and the edge relation.
  for (const auto& f : tri.functions) {
    std::set<std::size_t> sizes;
    int total = 0;
    for (const auto& [idx, w] : f.terms) {
      CHECK(sizes.insert(triangle().simplices()[idx].size()).second);
      total += w;
    }
    CHECK(total == 6);
  }
  CHECK_THROWS_AS(build_D_ell(triangle(), 3, 2, ConstructionLimits{50, 1}), SizeLimitError);
}

TEST_CASE("map_s examples") {
  const auto& t = triangle();
  LatticeFunction f{{{index_of(t, {0}), 6}}};
  CHECK(map_s(t, f, 2, 2) == words({"000000", "", ""}));
  LatticeFunction g{{{index_of(t, {0}), 2}, {index_of(t, {0, 1}), 2}, {index_of(t, {0, 1, 2}), 2}}};
  CHECK(map_s(t, g, 2, 2) == words({"00", "00", "00"}));
  LatticeFunction h{{{index_of(edge(), {1}), 1}, {index_of(edge(), {0, 1}), 1}}};
  CHECK(map_s(edge(), h, 1, 1) == words({"1", "0"}));

  const auto big = SimplicialComplex::from_simplices({{0, 4}});
  LatticeFunction bad{{{index_of(big, {4}), 2}}};
  CHECK_THROWS_AS(map_s(big, bad, 1, 1), EncodingError);
}

TEST_CASE("coarse constructions") {
  const auto cc = coarse_construct(edge());
  CHECK(cc.volume == 5);
  std::set<std::string> labels;
  for (const auto& l : cc.target_labels) labels.insert(to_string(l));
  CHECK(labels == std::set<std::string>{"(00,)", "(11,)", "(,00)", "(0,0)", "(1,0)"});
  CHECK(validate_construction(cc, 2, 5).passed());

  const Report fail = validate_construction(cc, 0, 5);
  CHECK_FALSE(fail.passed());
  for (const auto& row : fail.rows) {
    if (!row.pass) CHECK(row.check == "k: measured_k <= claim");
  }

  CHECK(coarse_construct(SimplicialComplex::from_simplices({{7}})).volume == 1);

  const auto tri = coarse_construct(triangle());
  CHECK(tri.measured_k <= 4);
  CHECK(validate_construction(tri, 4, tri.volume).passed());
}

TEST_CASE("constructions on random complexes match independent recomputation") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 12; ++t) {
    const auto z = random_complex(3 + t % 8, 2, 4, rng);
    const auto cc = coarse_construct(z);
    const auto st = stats(z);
    const auto& lattice = *cc.subdivision;
    CHECK(lattice.dimension() == z.dimension());
    CHECK(cc.measured_k <= (std::int64_t{1} << st.degree));
    // Vertex relabelling is order preserving, so the simplices of the
    // relabelled copy line up with those of z.
    std::vector<Simplex> relabeled;
    for (const auto& s : z.maximal_simplices()) {
      Simplex r;
      for (Vertex v : s) r.push_back(static_cast<Vertex>(std::lower_bound(z.vertices().begin(), z.vertices().end(), v) -
                                                         z.vertices().begin()));
      relabeled.push_back(r);
    }
    const auto z0 = SimplicialComplex::from_simplices(relabeled);
    std::set<std::vector<std::string>> images;
    for (std::size_t f = 0; f < lattice.functions.size(); ++f) {
      const auto w = lattice_words(z0, lattice.functions[f], cc.ell, cc.d);
      CHECK(w == cc.target_labels[cc.vertex_map[f]].words);
      images.insert(w);
      for (int g : lattice.adjacency[f]) {
        const auto& other = cc.target_labels[cc.vertex_map[g]].words;
        CHECK((w == other || words_adjacent(w, other)));
      }
    }
    CHECK(cc.volume == static_cast<std::int64_t>(images.size()));
    CHECK(validate_construction(cc, std::int64_t{1} << st.degree, cc.volume).passed());
  }
}

TEST_CASE("composition") {
  const auto tri = coarse_construct(triangle());
  const auto id = identity_construction(triangle());
  const auto composite = compose(id, tri);
  CHECK(composite.measured_k == tri.measured_k);
  CHECK(composite.volume == tri.volume);

  const auto first = coarse_construct(edge());
  const auto second = coarse_construct(first.target);
  const auto chained = compose(first, second);
  CHECK(chained.measured_k <= first.measured_k * second.measured_k);
  CHECK(chained.volume <= second.volume);
  CHECK(validate_construction(chained, first.measured_k * second.measured_k, second.volume).passed());

  CHECK_THROWS_AS(compose(tri, tri), PreconditionError);
  CHECK(image_complex(tri).vertex_count() == static_cast<std::size_t>(tri.volume));
}

TEST_CASE("manifest round trip") {
  const auto cc = coarse_construct(SimplicialComplex::from_simplices({{0, 1, 2}, {2, 3}}));
  const std::string text = write_manifest(cc);
  const auto back = load_manifest(text);
  CHECK(write_manifest(back) == text);
  CHECK(back.measured_k == cc.measured_k);
  CHECK(back.volume == cc.volume);
  CHECK(back.pieces == cc.pieces);
  CHECK(validate_construction(back, 8, cc.volume).passed());
  CHECK_THROWS(load_manifest("h 1 1 2 2 5\ns 0 1\nf 0:3 -> (00,)\n"));
}
