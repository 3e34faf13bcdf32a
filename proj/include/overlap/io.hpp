#pragma once

#include <string>
#include <vector>

#include "overlap/complex.hpp"
#include "overlap/cubulation.hpp"
#include "overlap/profiles.hpp"
#include "overlap/report.hpp"

namespace overlap {

/// Complex text format:
///
///     # comment
///     c <n>
///     s v1 v2 ... vk      (one maximal simplex per line, ids in [0, n))
///
/// The vertex set is the union of the listed simplices. Errors raise ParseError
/// carrying the 1-based line number.
SimplicialComplex parse_complex(const std::string& text);
/// Header `c <max id + 1>`, then the maximal simplices in lexicographic order.
std::string emit_complex(const SimplicialComplex& complex);

/// `r,value,mode,witness` with the witness as space-separated ids.
std::string emit_csv(const ProfileTable& table);
ProfileTable parse_profile_csv(const std::string& text, Invariant invariant);

/// `check,lhs,rhs,pass`; non-binding rows carry a " (non-binding)" suffix on the check name.
std::string emit_csv(const Report& report);

struct CubeFile {
  CubeSet cubes;
  int r = 0;
};

/// First line `k r`, then one root per line as k integers.
CubeFile parse_cubes(const std::string& text);

/// One vertex set per line (space-separated ids); `#` starts a comment line.
std::vector<std::vector<Vertex>> parse_candidates(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace overlap
