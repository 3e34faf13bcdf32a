#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "overlap/graph.hpp"

namespace overlap {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);
/// Parses "p/q" or an integer; throws PreconditionError otherwise.
Rational parse_rational(const std::string& text);

/// A vertex set whose removal leaves only components with at most n/2 vertices.
struct SeparatorWitness {
  std::vector<Vertex> separator;
  /// Order of the largest remaining component (0 when nothing remains).
  int max_component = 0;
};

struct SearchLimits {
  int max_vertices = 20;
  int threads = 1;
};

/// Minimum separator, searched by increasing size; the witness is the
/// lexicographically smallest minimum separator.
SeparatorWitness separation_cut(const Graph& g, const SearchLimits& limits = {});

/// Vertex Cheeger constant min |dA|/|A| over 0 < |A| <= n/2, kept as an exact
/// rational. For graphs with at most one vertex the range is empty and
/// `infinite` is set.
struct CheegerWitness {
  bool infinite = false;
  Rational value{0};
  std::vector<Vertex> witness_set;
  std::vector<Vertex> boundary;
};

/// Exhaustive scan of all vertex subsets; ties go to the lexicographically
/// smallest witness set.
CheegerWitness cheeger_exact(const Graph& g, const SearchLimits& limits = {});

}  // namespace overlap
