#include "overlap/horocyclic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/functional/hash.hpp>

#include "overlap/error.hpp"
#include "overlap/parallel.hpp"

namespace overlap {

std::string binary_code(std::int64_t k, int i, int ell, int d) {
  if (ell < 1 || ell > 62) throw EncodingError("binary_code: ell must lie in [1, 62]");
  if (k < 0 || k >= (std::int64_t{1} << ell)) {
    throw EncodingError("binary_code: " + std::to_string(k) + " does not fit in " + std::to_string(ell) + " bits");
  }
  if (i < 0 || i > (d + 1) * ell) throw EncodingError("binary_code: prefix length out of range");
  std::string block(static_cast<std::size_t>(ell), '0');
  for (int b = 0; b < ell; ++b) {
    if ((k >> (ell - 1 - b)) & 1) block[b] = '1';
  }
  std::string out;
  out.reserve(i);
  while (static_cast<int>(out.size()) < i) out += block;
  out.resize(i);
  return out;
}

bool horocyclic_less(const HorocyclicVertex& a, const HorocyclicVertex& b) {
  if (a.words.size() != b.words.size()) return a.words.size() < b.words.size();
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    if (a.words[i].size() != b.words[i].size()) return a.words[i].size() < b.words[i].size();
  }
  return a.words < b.words;
}

std::string to_string(const HorocyclicVertex& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.words.size(); ++i) {
    if (i) out += ',';
    out += v.words[i];
  }
  return out + ")";
}

HorocyclicVertex parse_horocyclic_vertex(const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw MalformedInput("word tuple must be parenthesized: '" + text + "'");
  }
  HorocyclicVertex v;
  std::string current;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    const char c = text[i];
    if (c == ',') {
      v.words.push_back(current);
      current.clear();
    } else if (c == '0' || c == '1') {
      current += c;
    } else {
      throw MalformedInput("word tuple may only contain 0, 1 and commas: '" + text + "'");
    }
  }
  v.words.push_back(current);
  return v;
}

namespace {

/// x is y followed by exactly one more character.
bool extends(const std::string& x, const std::string& y) {
  return x.size() == y.size() + 1 && x.compare(0, y.size(), y) == 0;
}

struct WordsHash {
  std::size_t operator()(const HorocyclicVertex& v) const { return boost::hash_range(v.words.begin(), v.words.end()); }
};

using WordIndex = std::unordered_map<HorocyclicVertex, int, WordsHash>;

/// Neighbours of v under the edge rule among the vertices present in `index`.
std::vector<int> word_neighbors(const HorocyclicVertex& v, const WordIndex& index) {
  std::vector<int> out;
  HorocyclicVertex w = v;
  const std::size_t m = v.words.size();
  for (std::size_t j = 0; j < m; ++j) {
    if (v.words[j].empty()) continue;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      w.words[j].pop_back();
      for (char c : {'0', '1'}) {
        w.words[k].push_back(c);
        if (auto it = index.find(w); it != index.end()) out.push_back(it->second);
        w.words[k].pop_back();
      }
      w.words[j] = v.words[j];
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool horocyclic_adjacent(const HorocyclicVertex& a, const HorocyclicVertex& b) {
  if (a.words.size() != b.words.size()) return false;
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    if (a.words[i] != b.words[i]) diff.push_back(i);
  }
  if (diff.size() != 2) return false;
  const auto& [j, k] = std::pair{diff[0], diff[1]};
  return (extends(a.words[j], b.words[j]) && extends(b.words[k], a.words[k])) ||
         (extends(a.words[k], b.words[k]) && extends(b.words[j], a.words[j]));
}

SimplicialComplex flag_complex(const std::vector<std::vector<int>>& adjacency) {
  std::vector<Simplex> cliques;
  Simplex clique;
  std::function<void(const std::vector<int>&)> grow = [&](const std::vector<int>& candidates) {
    bool maximal = true;
    for (int v : candidates) {
      maximal = false;
      clique.push_back(v);
      std::vector<int> next;
      std::set_intersection(candidates.begin(), candidates.end(), adjacency[v].begin(), adjacency[v].end(),
                            std::back_inserter(next));
      next.erase(next.begin(), std::upper_bound(next.begin(), next.end(), v));
      grow(next);
      clique.pop_back();
    }
    if (maximal) cliques.push_back(clique);
  };
  for (int v = 0; v < static_cast<int>(adjacency.size()); ++v) {
    clique.assign(1, v);
    std::vector<int> above(std::upper_bound(adjacency[v].begin(), adjacency[v].end(), v), adjacency[v].end());
    grow(above);
  }
  return SimplicialComplex::from_simplices(cliques);
}

HorocyclicComplex build_H_ell(int d, int ell, std::size_t max_vertices) {
  if (d < 0 || ell < 1) throw PreconditionError("build_H_ell: need d >= 0 and ell >= 1");
  const int total = ell * (d + 1);
  if (total > 40) throw SizeLimitError("build_H_ell: total word length too large");
  // Count first: C(total+d, d) length profiles, 2^total words each.
  double count = 1;
  for (int i = 1; i <= d; ++i) count = count * (total + i) / i;
  count *= static_cast<double>(std::uint64_t{1} << total);
  if (count > static_cast<double>(max_vertices)) {
    throw SizeLimitError("build_H_ell: " + std::to_string(static_cast<std::uint64_t>(count)) +
                         " vertices exceed the limit of " + std::to_string(max_vertices));
  }

  HorocyclicComplex h;
  h.d = d;
  h.ell = ell;
  std::vector<int> lengths(d + 1, 0);
  std::function<void(int, int)> profiles = [&](int pos, int left) {
    if (pos == d) {
      lengths[pos] = left;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << total); ++bits) {
        HorocyclicVertex v;
        int used = 0;
        for (int len : lengths) {
          std::string w(static_cast<std::size_t>(len), '0');
          for (int c = 0; c < len; ++c) {
            if ((bits >> (total - 1 - used - c)) & 1) w[c] = '1';
          }
          used += len;
          v.words.push_back(std::move(w));
        }
        h.labels.push_back(std::move(v));
      }
      return;
    }
    for (int len = 0; len <= left; ++len) {
      lengths[pos] = len;
      profiles(pos + 1, left - len);
    }
  };
  profiles(0, total);
  std::sort(h.labels.begin(), h.labels.end(), horocyclic_less);

  WordIndex index;
  for (int i = 0; i < static_cast<int>(h.labels.size()); ++i) index.emplace(h.labels[i], i);
  std::vector<std::vector<int>> adjacency(h.labels.size());
  for (std::size_t i = 0; i < h.labels.size(); ++i) adjacency[i] = word_neighbors(h.labels[i], index);
  h.complex = flag_complex(adjacency);
  if (h.complex.degree() > 2 * d * (d + 1)) throw InternalError("build_H_ell: degree bound 2d(d+1) violated");
  if (h.complex.dimension() > d) throw InternalError("build_H_ell: dimension exceeds d");
  return h;
}

namespace {

using FunctionKey = std::vector<std::uint64_t>;

struct KeyHash {
  std::size_t operator()(const FunctionKey& k) const { return boost::hash_range(k.begin(), k.end()); }
};

FunctionKey key_of(const LatticeFunction& f) {
  FunctionKey k;
  k.reserve(f.terms.size());
  for (const auto& [idx, w] : f.terms) k.push_back((std::uint64_t{idx} << 32) | static_cast<std::uint32_t>(w));
  return k;
}

bool is_subset(const Simplex& a, const Simplex& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool comparable(const SimplicialComplex& z, std::uint32_t a, std::uint32_t b) {
  const auto& sa = z.simplices()[a];
  const auto& sb = z.simplices()[b];
  return sa.size() <= sb.size() ? is_subset(sa, sb) : is_subset(sb, sa);
}

/// Indices sorted ascending (hence by size) form a strictly increasing chain.
bool is_chain(const SimplicialComplex& z, const std::vector<std::uint32_t>& sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto& lo = z.simplices()[sorted[i - 1]];
    const auto& hi = z.simplices()[sorted[i]];
    if (lo.size() >= hi.size() || !is_subset(lo, hi)) return false;
  }
  return true;
}

std::vector<std::vector<std::uint32_t>> proper_faces(const SimplicialComplex& z) {
  const auto& all = z.simplices();
  std::vector<std::vector<std::uint32_t>> faces(all.size());
  Simplex face;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t m = all[i].size();
    for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
      face.clear();
      for (std::size_t b = 0; b < m; ++b) {
        if (mask & (1u << b)) face.push_back(all[i][b]);
      }
      faces[i].push_back(static_cast<std::uint32_t>(*z.find(face)));
    }
    std::sort(faces[i].begin(), faces[i].end());
  }
  return faces;
}

void link_functions(const SimplicialComplex& z, DLatticeComplex& out) {
  const auto faces = proper_faces(z);
  std::vector<std::vector<std::uint32_t>> cofaces(faces.size());
  for (std::uint32_t i = 0; i < faces.size(); ++i) {
    for (auto f : faces[i]) cofaces[f].push_back(i);
  }
  std::unordered_map<FunctionKey, int, KeyHash> index;
  index.reserve(out.functions.size() * 2);
  for (int i = 0; i < static_cast<int>(out.functions.size()); ++i) {
    if (!index.emplace(key_of(out.functions[i]), i).second) throw MalformedInput("repeated lattice function");
  }

  out.adjacency.assign(out.functions.size(), {});
  std::vector<std::uint32_t> fresh;
  for (int id = 0; id < static_cast<int>(out.functions.size()); ++id) {
    const LatticeFunction& f = out.functions[id];
    const std::uint32_t top = f.top();
    fresh.clear();
    auto consider = [&](std::uint32_t c) {
      for (const auto& [idx, w] : f.terms) {
        if (idx == c || !comparable(z, idx, c)) return;
      }
      fresh.push_back(c);
    };
    for (auto c : faces[top]) consider(c);
    for (auto c : cofaces[top]) consider(c);

    auto add = [&](const LatticeFunction& g) {
      if (auto it = index.find(key_of(g)); it != index.end()) out.adjacency[id].push_back(it->second);
    };
    for (std::size_t a = 0; a < f.terms.size(); ++a) {
      for (std::size_t b = 0; b < f.terms.size(); ++b) {
        if (a == b) continue;
        LatticeFunction g = f;
        g.terms[b].second += 1;
        if (--g.terms[a].second == 0) g.terms.erase(g.terms.begin() + static_cast<std::ptrdiff_t>(a));
        add(g);
      }
      for (auto c : fresh) {
        LatticeFunction g = f;
        if (--g.terms[a].second == 0) g.terms.erase(g.terms.begin() + static_cast<std::ptrdiff_t>(a));
        auto pos = std::lower_bound(g.terms.begin(), g.terms.end(), std::pair<std::uint32_t, int>{c, 0});
        g.terms.insert(pos, {c, 1});
        add(g);
      }
    }
    auto& row = out.adjacency[id];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

void check_function(const SimplicialComplex& z, const LatticeFunction& f, int total, int d) {
  if (f.terms.empty()) throw MalformedInput("lattice function with empty support");
  std::vector<std::uint32_t> support;
  int sum = 0;
  for (const auto& [idx, w] : f.terms) {
    if (idx >= z.simplex_count()) throw MalformedInput("lattice function names an unknown simplex");
    if (w <= 0) throw MalformedInput("lattice function weights must be positive");
    if (static_cast<int>(z.simplices()[idx].size()) > d + 1) throw MalformedInput("support set exceeds dimension d");
    support.push_back(idx);
    sum += w;
  }
  if (!std::is_sorted(support.begin(), support.end()) || !is_chain(z, support)) {
    throw MalformedInput("lattice function support is not an increasing chain");
  }
  if (sum != total) throw MalformedInput("lattice function weights must sum to (d+1)*ell");
}

std::int64_t saturating_pow2(std::int64_t e) { return e >= 62 ? INT64_MAX : std::int64_t{1} << e; }

}  // namespace

int DLatticeComplex::degree() const {
  std::size_t best = 0;
  for (const auto& row : adjacency) best = std::max(best, row.size());
  return static_cast<int>(best);
}

void DLatticeComplex::for_each_simplex(const std::function<void(std::span<const int>, std::uint32_t)>& visit) const {
  std::vector<int> clique;
  std::function<void(const std::vector<int>&, std::uint32_t)> grow = [&](const std::vector<int>& candidates,
                                                                         std::uint32_t top) {
    visit(clique, top);
    for (int v : candidates) {
      if (static_cast<int>(clique.size()) == d + 1) {
        throw InternalError("lattice subdivision has a simplex of dimension above d");
      }
      clique.push_back(v);
      std::vector<int> next;
      std::set_intersection(candidates.begin(), candidates.end(), adjacency[v].begin(), adjacency[v].end(),
                            std::back_inserter(next));
      next.erase(next.begin(), std::upper_bound(next.begin(), next.end(), v));
      grow(next, std::max(top, functions[v].top()));
      clique.pop_back();
    }
  };
  for (int v = 0; v < static_cast<int>(functions.size()); ++v) {
    clique.assign(1, v);
    std::vector<int> above(std::upper_bound(adjacency[v].begin(), adjacency[v].end(), v), adjacency[v].end());
    grow(above, functions[v].top());
  }
}

std::size_t DLatticeComplex::simplex_count() const {
  std::size_t count = 0;
  for_each_simplex([&](std::span<const int>, std::uint32_t) { ++count; });
  return count;
}

int DLatticeComplex::dimension() const {
  int dim = functions.empty() ? -1 : 0;
  for_each_simplex([&](std::span<const int> s, std::uint32_t) { dim = std::max(dim, static_cast<int>(s.size()) - 1); });
  return dim;
}

SimplicialComplex DLatticeComplex::to_complex() const {
  std::vector<Simplex> all;
  for_each_simplex([&](std::span<const int> s, std::uint32_t) { all.emplace_back(s.begin(), s.end()); });
  return SimplicialComplex::from_simplices(all);
}

DLatticeComplex lattice_from_functions(const SimplicialComplex& z, int ell, int d,
                                       std::vector<LatticeFunction> functions) {
  DLatticeComplex out;
  out.d = d;
  out.ell = ell;
  for (const auto& f : functions) check_function(z, f, (d + 1) * ell, d);
  out.functions = std::move(functions);
  link_functions(z, out);
  return out;
}

DLatticeComplex build_D_ell(const SimplicialComplex& z, int ell, int d, const ConstructionLimits& limits) {
  if (ell < 1 || d < 0) throw PreconditionError("build_D_ell: need ell >= 1 and d >= 0");
  if (z.dimension() > d) throw PreconditionError("build_D_ell: d is below the dimension of the complex");
  const int total = (d + 1) * ell;
  const Barycentric bary = barycentric_subdivision(z);

  DLatticeComplex out;
  out.d = d;
  out.ell = ell;
  std::vector<int> parts;
  for (const auto& chain : bary.complex.simplices()) {
    const int m = static_cast<int>(chain.size());
    if (m > total) continue;
    // Compositions of `total` into m positive parts, in lexicographic order.
    parts.assign(m, 1);
    parts[m - 1] = total - (m - 1);
    while (true) {
      LatticeFunction f;
      for (int i = 0; i < m; ++i) f.terms.emplace_back(static_cast<std::uint32_t>(bary.label[chain[i]]), parts[i]);
      out.functions.push_back(std::move(f));
      if (out.functions.size() > limits.max_vertices) {
        throw SizeLimitError("build_D_ell: more than " + std::to_string(limits.max_vertices) + " lattice functions");
      }
      // Next composition: bump the rightmost part that leaves room for the tail.
      int pos = m - 2;
      for (; pos >= 0; --pos) {
        int tail = 0;
        for (int t = pos + 1; t < m; ++t) tail += parts[t];
        if (tail > m - 1 - pos) break;
      }
      if (pos < 0) break;
      ++parts[pos];
      for (int t = pos + 1; t < m - 1; ++t) parts[t] = 1;
      int used = 0;
      for (int t = 0; t < m - 1; ++t) used += parts[t];
      parts[m - 1] = total - used;
    }
  }
  link_functions(z, out);

  const std::int64_t delta = stats(z).delta;
  const std::int64_t pow_delta = saturating_pow2(delta);
  const std::int64_t degree_bound = pow_delta > INT64_MAX / std::max<std::int64_t>(delta, 1) ? INT64_MAX : delta * pow_delta;
  if (out.degree() > degree_bound) throw InternalError("build_D_ell: degree bound Delta*2^Delta violated");
  double size_bound = static_cast<double>(bary.complex.simplex_count());
  for (int i = 0; i < d; ++i) size_bound *= total + 1;
  if (static_cast<double>(out.functions.size()) > size_bound) throw InternalError("build_D_ell: size bound violated");
  return out;
}

HorocyclicVertex map_s(const SimplicialComplex& z, const LatticeFunction& f, int ell, int d) {
  HorocyclicVertex v;
  v.words.assign(d + 1, std::string());
  for (const auto& [idx, w] : f.terms) {
    const Simplex& a = z.simplices().at(idx);
    const std::size_t j = a.size() - 1;
    if (static_cast<int>(j) > d) throw PreconditionError("map_s: support set exceeds dimension d");
    v.words[j] = binary_code(a.front(), w, ell, d);
  }
  return v;
}

std::int64_t measure_k(const SimplicialComplex& target, std::span<const Piece> pieces, int threads) {
  std::unordered_map<Vertex, std::vector<std::uint32_t>> carriers;
  for (const auto& p : pieces) {
    for (Vertex w : p.image) carriers[w].push_back(p.carrier);
  }
  for (auto& [w, list] : carriers) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  const std::vector<Simplex> maximal = target.maximal_simplices();
  auto block = [&](std::uint64_t begin, std::uint64_t end) {
    std::int64_t best = 0;
    std::vector<std::uint32_t> merged;
    for (std::uint64_t i = begin; i < end; ++i) {
      merged.clear();
      for (Vertex w : maximal[i]) {
        if (auto it = carriers.find(w); it != carriers.end()) merged.insert(merged.end(), it->second.begin(), it->second.end());
      }
      std::sort(merged.begin(), merged.end());
      best = std::max<std::int64_t>(best, std::unique(merged.begin(), merged.end()) - merged.begin());
    }
    return best;
  };
  return parallel_reduce(maximal.size(), threads, std::int64_t{0}, block,
                         [](std::int64_t a, std::int64_t b) { return std::max(a, b); });
}

namespace {

std::int64_t distinct_image_vertices(std::span<const Piece> pieces) {
  std::set<Vertex> seen;
  for (const auto& p : pieces) seen.insert(p.image.begin(), p.image.end());
  return static_cast<std::int64_t>(seen.size());
}

/// Order-preserving relabelling onto 0..n-1; simplex order is unchanged.
SimplicialComplex zero_indexed(const SimplicialComplex& z) {
  std::unordered_map<Vertex, Vertex> position;
  for (std::size_t i = 0; i < z.vertices().size(); ++i) position.emplace(z.vertices()[i], static_cast<Vertex>(i));
  std::vector<Simplex> relabeled;
  for (const auto& s : z.maximal_simplices()) {
    Simplex t;
    for (Vertex v : s) t.push_back(position.at(v));
    relabeled.push_back(std::move(t));
  }
  return SimplicialComplex::from_simplices(relabeled);
}

int code_length(std::size_t n) {
  int ell = 1;
  while ((std::size_t{1} << ell) < n) ++ell;
  return ell;
}

/// Target, vertex map and pieces from a lattice subdivision and its words.
void assemble(CoarseConstruction& cc, const std::vector<HorocyclicVertex>& words, bool strict, int threads) {
  const DLatticeComplex& lattice = *cc.subdivision;
  cc.target_labels = words;
  std::sort(cc.target_labels.begin(), cc.target_labels.end(), horocyclic_less);
  cc.target_labels.erase(std::unique(cc.target_labels.begin(), cc.target_labels.end()), cc.target_labels.end());
  WordIndex index;
  for (int i = 0; i < static_cast<int>(cc.target_labels.size()); ++i) index.emplace(cc.target_labels[i], i);
  cc.vertex_map.resize(words.size());
  for (std::size_t f = 0; f < words.size(); ++f) cc.vertex_map[f] = index.at(words[f]);

  if (strict) {
    for (std::size_t f = 0; f < lattice.adjacency.size(); ++f) {
      for (int g : lattice.adjacency[f]) {
        if (cc.vertex_map[f] != cc.vertex_map[g] && !horocyclic_adjacent(words[f], words[g])) {
          throw InternalError("coarse_construct: adjacent lattice functions " + std::to_string(f) + " and " +
                              std::to_string(g) + " map to non-adjacent words");
        }
      }
    }
  }

  std::vector<std::vector<int>> adjacency(cc.target_labels.size());
  for (std::size_t i = 0; i < cc.target_labels.size(); ++i) adjacency[i] = word_neighbors(cc.target_labels[i], index);
  cc.target = flag_complex(adjacency);

  std::set<Piece> pieces;
  lattice.for_each_simplex([&](std::span<const int> members, std::uint32_t top) {
    Piece p;
    p.carrier = top;
    for (int f : members) p.image.push_back(cc.vertex_map[f]);
    std::sort(p.image.begin(), p.image.end());
    p.image.erase(std::unique(p.image.begin(), p.image.end()), p.image.end());
    pieces.insert(std::move(p));
  });
  cc.pieces.assign(pieces.begin(), pieces.end());
  cc.measured_k = measure_k(cc.target, cc.pieces, threads);
  cc.volume = distinct_image_vertices(cc.pieces);
}

}  // namespace

CoarseConstruction coarse_construct(const SimplicialComplex& z, const ConstructionLimits& limits) {
  CoarseConstruction cc;
  cc.source = z;
  if (z.empty()) return cc;
  const SimplicialComplex z0 = zero_indexed(z);
  cc.d = z0.dimension();
  cc.ell = code_length(z0.vertex_count());
  cc.subdivision = build_D_ell(z0, cc.ell, cc.d, limits);
  std::vector<HorocyclicVertex> words;
  words.reserve(cc.subdivision->functions.size());
  for (const auto& f : cc.subdivision->functions) words.push_back(map_s(z0, f, cc.ell, cc.d));
  assemble(cc, words, true, limits.threads);
  return cc;
}

CoarseConstruction identity_construction(const SimplicialComplex& z) {
  CoarseConstruction cc;
  cc.source = z;
  cc.target = z;
  cc.d = std::max(0, z.dimension());
  for (std::size_t i = 0; i < z.simplex_count(); ++i) cc.pieces.push_back({static_cast<std::uint32_t>(i), z.simplices()[i]});
  std::sort(cc.pieces.begin(), cc.pieces.end());
  cc.measured_k = measure_k(cc.target, cc.pieces);
  cc.volume = distinct_image_vertices(cc.pieces);
  return cc;
}

CoarseConstruction compose(const CoarseConstruction& first, const CoarseConstruction& second, int threads) {
  if (!(first.target == second.source)) {
    throw PreconditionError("compose: the first target is not the second source");
  }
  std::vector<std::vector<const Piece*>> by_carrier(second.source.simplex_count());
  for (const auto& p : second.pieces) by_carrier.at(p.carrier).push_back(&p);

  CoarseConstruction cc;
  cc.source = first.source;
  cc.target = second.target;
  cc.target_labels = second.target_labels;
  cc.d = first.d;
  cc.ell = second.ell;
  std::set<Piece> pieces;
  for (const auto& p : first.pieces) {
    const auto idx = second.source.find(p.image);
    if (!idx) throw PreconditionError("compose: a piece image of the first construction is not a simplex of its target");
    for (const Piece* q : by_carrier[*idx]) pieces.insert({p.carrier, q->image});
  }
  cc.pieces.assign(pieces.begin(), pieces.end());
  cc.measured_k = measure_k(cc.target, cc.pieces, threads);
  cc.volume = distinct_image_vertices(cc.pieces);
  return cc;
}

SimplicialComplex image_complex(const CoarseConstruction& cc) {
  std::vector<Simplex> images;
  for (const auto& p : cc.pieces) images.push_back(p.image);
  return SimplicialComplex::from_simplices(images);
}

Report validate_construction(const CoarseConstruction& cc, std::int64_t k_claim, std::int64_t volume_claim,
                             int threads) {
  Report report;

  std::int64_t not_simplex = 0;
  std::int64_t rule_violations = 0;
  std::int64_t dimension_violations = 0;
  for (const auto& p : cc.pieces) {
    if (p.carrier >= cc.source.simplex_count()) throw PreconditionError("validate_construction: unknown carrier");
    if (!cc.target.contains(p.image)) ++not_simplex;
    if (p.image.size() > cc.source.simplices()[p.carrier].size()) ++dimension_violations;
    if (!cc.target_labels.empty()) {
      for (std::size_t a = 0; a < p.image.size(); ++a) {
        for (std::size_t b = a + 1; b < p.image.size(); ++b) {
          const auto ia = static_cast<std::size_t>(p.image[a]);
          const auto ib = static_cast<std::size_t>(p.image[b]);
          if (ia >= cc.target_labels.size() || ib >= cc.target_labels.size() ||
              !horocyclic_adjacent(cc.target_labels[ia], cc.target_labels[ib])) {
            ++rule_violations;
          }
        }
      }
    }
  }
  report.add("simplicial: piece images are target simplices", std::to_string(not_simplex), "0", not_simplex == 0);
  if (!cc.target_labels.empty()) {
    report.add("simplicial: image vertices satisfy the edge rule", std::to_string(rule_violations), "0",
               rule_violations == 0);
  }
  if (cc.subdivision) {
    const DLatticeComplex& lattice = *cc.subdivision;
    const SimplicialComplex z0 = zero_indexed(cc.source);
    std::int64_t edge_violations = 0;
    std::int64_t map_mismatches = 0;
    for (std::size_t f = 0; f < lattice.functions.size(); ++f) {
      const HorocyclicVertex expected = map_s(z0, lattice.functions[f], cc.ell, cc.d);
      const auto& actual = cc.target_labels.at(static_cast<std::size_t>(cc.vertex_map.at(f)));
      if (!(expected == actual)) ++map_mismatches;
      for (int g : lattice.adjacency[f]) {
        const auto& other = cc.target_labels.at(static_cast<std::size_t>(cc.vertex_map.at(g)));
        if (!(actual == other) && !horocyclic_adjacent(actual, other)) ++edge_violations;
      }
    }
    report.add("simplicial: subdivision edges map to equal or adjacent words", std::to_string(edge_violations / 2), "0",
               edge_violations == 0);
    report.add("vertex map agrees with map_s", std::to_string(map_mismatches), "0", map_mismatches == 0);
  }
  report.add("dimension: |image| <= |carrier| for every piece", std::to_string(dimension_violations), "0",
             dimension_violations == 0);

  // k recomputed directly: for each target simplex, the carriers of pieces whose image meets it.
  std::unordered_map<Vertex, std::vector<std::size_t>> touching;
  for (std::size_t i = 0; i < cc.pieces.size(); ++i) {
    for (Vertex w : cc.pieces[i].image) touching[w].push_back(i);
  }
  const auto& simplices = cc.target.simplices();
  auto block = [&](std::uint64_t begin, std::uint64_t end) {
    std::int64_t best = 0;
    std::set<std::uint32_t> carriers;
    for (std::uint64_t s = begin; s < end; ++s) {
      carriers.clear();
      for (Vertex w : simplices[s]) {
        if (auto it = touching.find(w); it != touching.end()) {
          for (std::size_t i : it->second) carriers.insert(cc.pieces[i].carrier);
        }
      }
      best = std::max<std::int64_t>(best, static_cast<std::int64_t>(carriers.size()));
    }
    return best;
  };
  const std::int64_t k = parallel_reduce(simplices.size(), threads, std::int64_t{0}, block,
                                         [](std::int64_t a, std::int64_t b) { return std::max(a, b); });
  report.add("k: measured_k <= claim", std::to_string(k), std::to_string(k_claim), k <= k_claim);
  report.add("k: recorded measured_k matches recomputation", std::to_string(cc.measured_k), std::to_string(k),
             cc.measured_k == k);

  std::set<Vertex> image_vertices;
  for (const auto& p : cc.pieces) image_vertices.insert(p.image.begin(), p.image.end());
  const auto volume = static_cast<std::int64_t>(image_vertices.size());
  report.add("volume <= claim", std::to_string(volume), std::to_string(volume_claim), volume <= volume_claim);
  report.add("volume: recorded volume matches recomputation", std::to_string(cc.volume), std::to_string(volume),
             cc.volume == volume);
  return report;
}

std::string write_manifest(const CoarseConstruction& cc) {
  if (!cc.subdivision) throw PreconditionError("write_manifest: construction has no subdivision record");
  std::ostringstream out;
  out << "h " << cc.d << ' ' << cc.ell << ' ' << cc.source.vertex_count() << ' ' << cc.measured_k << ' ' << cc.volume
      << '\n';
  for (const auto& s : cc.source.maximal_simplices()) {
    out << 's';
    for (Vertex v : s) out << ' ' << v;
    out << '\n';
  }
  const auto& lattice = *cc.subdivision;
  for (std::size_t f = 0; f < lattice.functions.size(); ++f) {
    out << 'f';
    for (const auto& [idx, w] : lattice.functions[f].terms) {
      out << ' ';
      const Simplex& a = cc.source.simplices()[idx];
      for (std::size_t i = 0; i < a.size(); ++i) out << (i ? "." : "") << a[i];
      out << ':' << w;
    }
    out << " -> " << to_string(cc.target_labels[static_cast<std::size_t>(cc.vertex_map[f])]) << '\n';
  }
  return out.str();
}

CoarseConstruction load_manifest(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int d = 0;
  int ell = 0;
  long long n = 0;
  long long k = 0;
  long long volume = 0;
  std::vector<Simplex> maximal;
  std::vector<std::pair<int, std::string>> function_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "h") {
      if (have_header || !(fields >> d >> ell >> n >> k >> volume)) throw ParseError(line_no, "bad header");
      have_header = true;
    } else if (tag == "s") {
      Simplex s;
      long long v = 0;
      while (fields >> v) {
        if (v < 0 || v > INT32_MAX) throw ParseError(line_no, "vertex id out of range");
        s.push_back(static_cast<Vertex>(v));
      }
      if (!fields.eof() || s.empty()) throw ParseError(line_no, "bad simplex line");
      maximal.push_back(std::move(s));
    } else if (tag == "f") {
      function_lines.emplace_back(line_no, line.substr(1));
    } else {
      throw ParseError(line_no, "unknown directive '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header");

  CoarseConstruction cc;
  try {
    cc.source = SimplicialComplex::from_simplices(maximal);
  } catch (const MalformedInput& e) {
    throw ParseError(line_no, e.what());
  }
  if (static_cast<long long>(cc.source.vertex_count()) != n) throw ParseError(1, "header vertex count mismatch");
  cc.d = d;
  cc.ell = ell;
  std::vector<LatticeFunction> functions;
  std::vector<HorocyclicVertex> words;
  for (const auto& [no, body] : function_lines) {
    const auto arrow = body.find("->");
    if (arrow == std::string::npos) throw ParseError(no, "missing '->'");
    std::istringstream terms(body.substr(0, arrow));
    std::string term;
    LatticeFunction f;
    while (terms >> term) {
      const auto colon = term.find(':');
      if (colon == std::string::npos) throw ParseError(no, "support term needs 'set:weight'");
      Simplex a;
      std::istringstream ids(term.substr(0, colon));
      std::string id;
      try {
        while (std::getline(ids, id, '.')) a.push_back(static_cast<Vertex>(std::stol(id)));
        const auto idx = cc.source.find(a);
        if (!idx) throw ParseError(no, "support set " + term.substr(0, colon) + " is not a simplex");
        f.terms.emplace_back(static_cast<std::uint32_t>(*idx), std::stoi(term.substr(colon + 1)));
      } catch (const std::logic_error&) {
        throw ParseError(no, "bad support term '" + term + "'");
      }
    }
    std::sort(f.terms.begin(), f.terms.end());
    std::string tuple = body.substr(arrow + 2);
    tuple.erase(0, tuple.find_first_not_of(' '));
    tuple.erase(tuple.find_last_not_of(" \r") + 1);
    try {
      HorocyclicVertex w = parse_horocyclic_vertex(tuple);
      if (static_cast<int>(w.words.size()) != d + 1) throw ParseError(no, "word tuple must have d+1 entries");
      words.push_back(std::move(w));
    } catch (const MalformedInput& e) {
      throw ParseError(no, e.what());
    }
    functions.push_back(std::move(f));
  }
  try {
    cc.subdivision = lattice_from_functions(zero_indexed(cc.source), ell, d, std::move(functions));
  } catch (const MalformedInput& e) {
    throw ParseError(line_no, e.what());
  }
  assemble(cc, words, false, 1);
  cc.measured_k = k;
  cc.volume = volume;
  return cc;
}

}  // namespace overlap
