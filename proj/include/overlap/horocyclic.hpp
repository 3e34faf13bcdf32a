#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "overlap/complex.hpp"
#include "overlap/report.hpp"

namespace overlap {

/// First i characters of (d+1) concatenated copies of the ell-bit big-endian
/// binary form of k. Throws EncodingError if k does not fit in ell bits.
std::string binary_code(std::int64_t k, int i, int ell, int d);

/// A (d+1)-tuple of binary strings.
struct HorocyclicVertex {
  std::vector<std::string> words;

  friend bool operator==(const HorocyclicVertex&, const HorocyclicVertex&) = default;
};

/// Order by length profile, then by the strings themselves.
bool horocyclic_less(const HorocyclicVertex& a, const HorocyclicVertex& b);
/// "(w0,w1,...)"; empty words leave an empty field.
std::string to_string(const HorocyclicVertex& v);
HorocyclicVertex parse_horocyclic_vertex(const std::string& text);

/// Edge rule: one coordinate of `a` extends the same coordinate of `b` by one
/// character, another coordinate of `b` extends that of `a` by one character,
/// and all other coordinates agree.
bool horocyclic_adjacent(const HorocyclicVertex& a, const HorocyclicVertex& b);

struct HorocyclicComplex {
  int d = 0;
  int ell = 0;
  /// Vertex i of `complex` is labels[i]; labels are sorted by horocyclic_less.
  std::vector<HorocyclicVertex> labels;
  SimplicialComplex complex;
};

/// All (d+1)-tuples of binary strings with total length ell*(d+1), with the
/// flag complex of the edge rule.
HorocyclicComplex build_H_ell(int d, int ell, std::size_t max_vertices = 1'000'000);

/// Clique complex of a graph given by sorted adjacency lists on 0..n-1.
SimplicialComplex flag_complex(const std::vector<std::vector<int>>& adjacency);

/// Non-negative integer weights on the simplices of Z whose support is a chain.
/// `terms` lists (index into Z.simplices(), weight > 0) by increasing simplex size.
struct LatticeFunction {
  std::vector<std::pair<std::uint32_t, int>> terms;

  std::uint32_t top() const { return terms.back().first; }
  friend bool operator==(const LatticeFunction&, const LatticeFunction&) = default;
};

/// The lattice subdivision of the barycentric subdivision of Z: functions with
/// chain support and total weight (d+1)*ell; edges join functions that differ by
/// +1 and -1 at two simplices with a chain as union of supports.
struct DLatticeComplex {
  int d = 0;
  int ell = 0;
  std::vector<LatticeFunction> functions;
  std::vector<std::vector<int>> adjacency;

  std::size_t vertex_count() const { return functions.size(); }
  int degree() const;
  /// Visits every simplex (ascending member list) together with its
  /// provenance: the top simplex of Z of the union of supports.
  void for_each_simplex(const std::function<void(std::span<const int>, std::uint32_t)>& visit) const;
  std::size_t simplex_count() const;
  int dimension() const;
  SimplicialComplex to_complex() const;
};

struct ConstructionLimits {
  /// Guard on the number of lattice functions.
  std::size_t max_vertices = 2'000'000;
  int threads = 1;
};

DLatticeComplex build_D_ell(const SimplicialComplex& z, int ell, int d, const ConstructionLimits& limits = {});
/// Rebuilds the edges for an explicit list of functions (each checked for
/// chain support and total weight).
DLatticeComplex lattice_from_functions(const SimplicialComplex& z, int ell, int d,
                                       std::vector<LatticeFunction> functions);

/// Coordinate j (0-based) is the code of the minimum vertex of the support set
/// with j+1 vertices, truncated to its weight; empty when there is no such set.
HorocyclicVertex map_s(const SimplicialComplex& z, const LatticeFunction& f, int ell, int d);

/// The image of the open cell of source simplex `carrier` contains the open
/// cell of target simplex `image`.
struct Piece {
  std::uint32_t carrier = 0;
  std::vector<Vertex> image;

  friend auto operator<=>(const Piece&, const Piece&) = default;
};

struct CoarseConstruction {
  SimplicialComplex source;
  SimplicialComplex target;
  /// Word labels of target vertices (empty when the target is not a piece of H_ell).
  std::vector<HorocyclicVertex> target_labels;
  int d = 0;
  int ell = 0;
  std::optional<DLatticeComplex> subdivision;
  /// subdivision vertex -> target vertex
  std::vector<Vertex> vertex_map;
  /// Sorted, without duplicates; carriers index source.simplices().
  std::vector<Piece> pieces;
  std::int64_t measured_k = 0;
  std::int64_t volume = 0;
};

/// Largest number of distinct carriers whose pieces meet one target simplex.
std::int64_t measure_k(const SimplicialComplex& target, std::span<const Piece> pieces, int threads = 1);

/// Subdivide, map into H_ell and record the pieces; vertices are relabelled
/// 0..n-1 in increasing order and ell = max(1, ceil(log2 n)).
CoarseConstruction coarse_construct(const SimplicialComplex& z, const ConstructionLimits& limits = {});
CoarseConstruction identity_construction(const SimplicialComplex& z);
/// Requires first.target == second.source.
CoarseConstruction compose(const CoarseConstruction& first, const CoarseConstruction& second, int threads = 1);
/// Closure of the piece images.
SimplicialComplex image_complex(const CoarseConstruction& cc);

Report validate_construction(const CoarseConstruction& cc, std::int64_t k_claim, std::int64_t volume_claim,
                             int threads = 1);

std::string write_manifest(const CoarseConstruction& cc);
/// Reloads a manifest: the stored functions and words are taken as given so that
/// validate_construction re-checks them.
CoarseConstruction load_manifest(const std::string& text);

}  // namespace overlap
