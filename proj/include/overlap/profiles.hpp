#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "overlap/complex.hpp"
#include "overlap/cutwidth.hpp"
#include "overlap/report.hpp"
#include "overlap/separation.hpp"

namespace overlap {

enum class Invariant { cutwidth, separation };
enum class EntryMode { exact, lower_bound };
enum class ProfileMode { exact, candidates };

std::string to_string(Invariant invariant);
std::string to_string(EntryMode mode);

struct ProfileEntry {
  int r = 0;
  int value = 0;
  std::vector<Vertex> witness;
  EntryMode mode = EntryMode::exact;
};

/// r -> (value, witness) for r = 0..r_max, non-decreasing in r.
struct ProfileTable {
  Invariant invariant = Invariant::cutwidth;
  /// Fingerprint of the host complex; empty when unknown (e.g. loaded from CSV).
  std::string host;
  std::vector<ProfileEntry> entries;

  int r_max() const { return static_cast<int>(entries.size()) - 1; }
  /// Profile at a real argument x: the entry at floor(x), 0 below 0, clamped at r_max.
  int value_at(double x) const;
  bool all_exact() const;
};

struct ProfileOptions {
  /// Exact mode enumerates every vertex subset of the host.
  int max_host_vertices = 16;
  int threads = 1;
};

std::string host_fingerprint(const SimplicialComplex& host);

/// Exact value of the invariant on a graph (cutwidth by DP, cutsize by subset search).
int invariant_value(const Graph& g, Invariant invariant);

/// Profile over the 1-skeleton of `host`. Exact mode maximizes over all
/// induced subgraphs with at most r vertices; candidates mode maximizes over
/// the supplied vertex sets and tags every entry as a lower bound.
ProfileTable profile(const SimplicialComplex& host, Invariant invariant, int r_max, ProfileMode mode,
                     std::span<const std::vector<Vertex>> candidates = {}, const ProfileOptions& options = {});

/// Checks cw(r) <= cw(ceil(r/2)) + delta * sep(r) for every r. The floor
/// reading is reported as non-binding rows.
Report verify_cwsep(const ProfileTable& cw, const ProfileTable& sep, int delta);

struct CertificateMember {
  int index = 0;
  int size = 0;
  int cutwidth = 0;
};

struct ExpanderCertificate {
  Rational epsilon{0};
  int delta = 0;
  std::vector<CertificateMember> members;
};

struct CertificateResult {
  std::optional<ExpanderCertificate> certificate;
  std::string refusal;
};

/// Certifies sTO^1(Z_n) >= epsilon |Z_n| through the exact cutwidth lower bound.
/// Without an explicit degree bound, the last member must not raise the
/// maximum degree seen on the earlier members.
CertificateResult expander_certificate(std::span<const SimplicialComplex> family, Rational epsilon,
                                       std::optional<int> degree_bound = std::nullopt,
                                       const CutwidthLimits& limits = {});

struct ExtractionStep {
  std::vector<Vertex> removed;
  CheegerWitness cheeger;
};

struct ExtractionResult {
  bool success = false;
  SimplicialComplex subgraph;
  CheegerWitness final_cheeger;
  std::vector<ExtractionStep> history;
};

/// Repeatedly deletes the Cheeger witness set until the remaining induced
/// subgraph has h >= target, or at most one vertex is left.
ExtractionResult extract_expander(const SimplicialComplex& graph, Rational target, const SearchLimits& limits = {});

/// Evaluates each inequality in the chain bounding eps*|Z| by the separation
/// profile of Z, plus the size hypothesis and its conclusion.
Report verify_expander_chain(const SimplicialComplex& graph, Rational epsilon, const ProfileOptions& options = {});
Report verify_expander_chain(const SimplicialComplex& graph, Rational epsilon, const ProfileTable& cw,
                             const ProfileTable& sep);

}  // namespace overlap
