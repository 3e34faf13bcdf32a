#pragma once

#include <cstdint>
#include <vector>

namespace overlap {

/// Root m stands for the unit cube prod_j [m_j + 1/2, m_j + 3/2].
using Root = std::vector<std::int64_t>;

/// Finite union of unit cubes on the half-integer lattice, stored as sorted distinct roots.
struct CubeSet {
  int k = 0;
  std::vector<Root> roots;

  /// Sorts and removes duplicates; every root must have k coordinates.
  static CubeSet from_roots(int k, std::vector<Root> roots);
};

/// True iff at least q coordinates satisfy m_j + 1 = 0 (mod r), i.e. the cube
/// meets the (k-q)-skeleton of the side-r cubulation.
bool cube_in_Y(const Root& m, int r, int q);

/// Minimal number of unit cubes covering the set, which is the number of roots.
std::int64_t cov_c(const CubeSet& z);

CubeSet intersect_with_Y(const CubeSet& z, int r, int q);

struct TranslateResult {
  Root v;
  std::int64_t count = 0;
  std::int64_t bound = 0;
};

/// (k choose q) * r^(k-q)
std::int64_t translate_bound(int k, int r, int q);

/// Exhaustive search over v in {0..r-1}^k for the smallest number of cubes of
/// (z - v) inside Y; ties go to the lexicographically smallest v. Requires
/// |roots| <= r^k.
TranslateResult find_translate(const CubeSet& z, int r, int q, int threads = 1);

/// 3^k unit cubes whose union contains the closed radius-1 ball at `centre`.
CubeSet cubes_covering_ball(const std::vector<double>& centre);

/// k^k centres a + n/k (a = m + 1/2, n in {0..k-1}^k) of radius-1 balls
/// covering the cube with root m.
std::vector<std::vector<double>> balls_covering_cube(const Root& m);

}  // namespace overlap
