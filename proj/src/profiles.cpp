#include "overlap/profiles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "overlap/error.hpp"
#include "overlap/parallel.hpp"

namespace overlap {

std::string to_string(Invariant invariant) {
  return invariant == Invariant::cutwidth ? "cutwidth" : "separation";
}

std::string to_string(EntryMode mode) { return mode == EntryMode::exact ? "exact" : "lower_bound"; }

int ProfileTable::value_at(double x) const {
  if (x < 0 || entries.empty()) return 0;
  const auto r = static_cast<long long>(std::floor(x + 1e-9));
  if (r >= static_cast<long long>(entries.size())) return entries.back().value;
  return entries[static_cast<std::size_t>(r)].value;
}

bool ProfileTable::all_exact() const {
  return std::all_of(entries.begin(), entries.end(), [](const ProfileEntry& e) { return e.mode == EntryMode::exact; });
}

std::string host_fingerprint(const SimplicialComplex& host) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(host.vertex_count());
  for (Vertex v : host.vertices()) mix(static_cast<std::uint64_t>(v));
  for (const auto& s : host.maximal_simplices()) {
    mix(s.size());
    for (Vertex v : s) mix(static_cast<std::uint64_t>(v));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int invariant_value(const Graph& g, Invariant invariant) {
  if (g.size() == 0) return 0;
  if (invariant == Invariant::separation) return static_cast<int>(separation_cut(g).separator.size());
  if (g.size() <= CutwidthLimits{}.max_vertices) return cutwidth_exact(g).width;
  return cutwidth_reduced(g).width;
}

namespace {

struct Best {
  int value = -1;
  std::vector<Vertex> witness;
};

/// Larger value wins; ties go to the lexicographically smaller witness.
bool improves(const Best& candidate, const Best& current) {
  if (candidate.value != current.value) return candidate.value > current.value;
  return candidate.witness < current.witness;
}

ProfileTable assemble(Invariant invariant, const std::string& host, int r_max, const std::vector<Best>& by_size,
                      EntryMode mode) {
  ProfileTable table;
  table.invariant = invariant;
  table.host = host;
  Best running{0, {}};
  for (int r = 0; r <= r_max; ++r) {
    if (r < static_cast<int>(by_size.size()) && by_size[r].value >= 0 && improves(by_size[r], running)) {
      running = by_size[r];
    }
    table.entries.push_back({r, running.value, running.witness, mode});
  }
  return table;
}

}  // namespace

ProfileTable profile(const SimplicialComplex& host, Invariant invariant, int r_max, ProfileMode mode,
                     std::span<const std::vector<Vertex>> candidates, const ProfileOptions& options) {
  if (r_max < 0) throw PreconditionError("profile: r_max must be non-negative");
  const Graph g = Graph::from_complex(host);
  const int n = g.size();
  const std::string fingerprint = host_fingerprint(host);

  if (mode == ProfileMode::candidates) {
    std::map<Vertex, int> dense;
    for (int i = 0; i < n; ++i) dense.emplace(g.label[i], i);
    std::vector<Best> by_size(r_max + 1);
    for (const auto& raw : candidates) {
      std::set<int> members;
      for (Vertex v : raw) {
        auto it = dense.find(v);
        if (it == dense.end()) throw PreconditionError("profile: candidate vertex " + std::to_string(v) + " not in host");
        members.insert(it->second);
      }
      const int size = static_cast<int>(members.size());
      if (size > r_max) continue;
      const std::vector<int> keep(members.begin(), members.end());
      const Graph sub = g.induced(keep);
      const Best found{invariant_value(sub, invariant), sub.label};
      if (by_size[size].value < 0 || improves(found, by_size[size])) by_size[size] = found;
    }
    return assemble(invariant, fingerprint, r_max, by_size, EntryMode::lower_bound);
  }

  if (n > options.max_host_vertices) {
    throw SizeLimitError("profile: exact mode enumerates all vertex subsets; host has " + std::to_string(n) +
                         " vertices, limit " + std::to_string(options.max_host_vertices));
  }
  const int top = std::min(r_max, n);
  using Table = std::vector<Best>;
  auto block = [&](std::uint64_t begin, std::uint64_t end) {
    Table local(top + 1);
    std::vector<int> keep;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      const int size = std::popcount(mask);
      if (size > top) continue;
      keep.clear();
      for (std::uint64_t rest = mask; rest; rest &= rest - 1) keep.push_back(std::countr_zero(rest));
      const Graph sub = g.induced(keep);
      Best found{invariant_value(sub, invariant), sub.label};
      if (local[size].value < 0 || improves(found, local[size])) local[size] = std::move(found);
    }
    return local;
  };
  auto combine = [](Table a, const Table& b) {
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (b[s].value >= 0 && (a[s].value < 0 || improves(b[s], a[s]))) a[s] = b[s];
    }
    return a;
  };
  const Table by_size = parallel_reduce(std::uint64_t{1} << n, options.threads, Table(top + 1), block, combine);
  return assemble(invariant, fingerprint, r_max, by_size, EntryMode::exact);
}

Report verify_cwsep(const ProfileTable& cw, const ProfileTable& sep, int delta) {
  if (cw.invariant != Invariant::cutwidth || sep.invariant != Invariant::separation) {
    throw PreconditionError("verify_cwsep: expected a cutwidth table and a separation table");
  }
  if (!cw.host.empty() && !sep.host.empty() && cw.host != sep.host) {
    throw PreconditionError("verify_cwsep: tables were computed on different hosts");
  }
  if (!cw.all_exact() || !sep.all_exact()) throw PreconditionError("verify_cwsep: both tables must be exact");
  if (cw.entries.size() != sep.entries.size()) throw PreconditionError("verify_cwsep: tables cover different r ranges");
  if (delta < 0) throw PreconditionError("verify_cwsep: delta must be non-negative");

  Report report;
  for (int r = 0; r <= cw.r_max(); ++r) {
    const int lhs = cw.entries[r].value;
    const int ceil_rhs = cw.entries[(r + 1) / 2].value + delta * sep.entries[r].value;
    const int floor_rhs = cw.entries[r / 2].value + delta * sep.entries[r].value;
    report.add("cwsep r=" + std::to_string(r), std::to_string(lhs), std::to_string(ceil_rhs), lhs <= ceil_rhs);
    report.add("cwsep_floor r=" + std::to_string(r), std::to_string(lhs), std::to_string(floor_rhs), lhs <= floor_rhs,
               false);
  }
  return report;
}

CertificateResult expander_certificate(std::span<const SimplicialComplex> family, Rational epsilon,
                                       std::optional<int> degree_bound, const CutwidthLimits& limits) {
  CertificateResult result;
  if (family.empty()) {
    result.refusal = "empty family";
    return result;
  }
  if (epsilon <= 0) {
    result.refusal = "epsilon must be positive";
    return result;
  }
  for (const auto& member : family) {
    if (member.dimension() > 1) throw PreconditionError("expander_certificate: members must be graphs");
  }
  for (std::size_t i = 1; i < family.size(); ++i) {
    if (family[i].vertex_count() <= family[i - 1].vertex_count()) {
      result.refusal = "sizes do not grow at member " + std::to_string(i);
      return result;
    }
  }
  int delta = 0;
  for (const auto& member : family) delta = std::max(delta, member.degree());
  if (degree_bound) {
    if (delta > *degree_bound) {
      result.refusal = "degree " + std::to_string(delta) + " exceeds the bound " + std::to_string(*degree_bound);
      return result;
    }
    delta = *degree_bound;
  } else if (family.size() > 1) {
    int earlier = 0;
    for (std::size_t i = 0; i + 1 < family.size(); ++i) earlier = std::max(earlier, family[i].degree());
    if (family.back().degree() > earlier) {
      result.refusal = "degrees grow along the family (last member has degree " +
                       std::to_string(family.back().degree()) + " > " + std::to_string(earlier) + ")";
      return result;
    }
  }

  ExpanderCertificate cert;
  cert.epsilon = epsilon;
  cert.delta = delta;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Graph g = Graph::from_complex(family[i]);
    const int cw = cutwidth_exact(g, limits).width;
    const int n = g.size();
    if (Rational(cw) < epsilon * n) {
      result.refusal = "member " + std::to_string(i) + ": cutwidth " + std::to_string(cw) + " < " +
                       to_string(epsilon * n) + " = epsilon * " + std::to_string(n);
      return result;
    }
    cert.members.push_back({static_cast<int>(i), n, cw});
  }
  result.certificate = std::move(cert);
  return result;
}

ExtractionResult extract_expander(const SimplicialComplex& graph, Rational target, const SearchLimits& limits) {
  if (graph.dimension() > 1) throw PreconditionError("extract_expander: input must be a graph");
  ExtractionResult result;
  Graph current = Graph::from_complex(graph);
  if (current.size() > limits.max_vertices) {
    throw SizeLimitError("extract_expander: " + std::to_string(current.size()) + " vertices exceed the limit of " +
                         std::to_string(limits.max_vertices));
  }
  while (true) {
    const CheegerWitness h = cheeger_exact(current, limits);
    if (h.infinite) {
      result.success = false;
      result.subgraph = current.to_complex();
      result.final_cheeger = h;
      return result;
    }
    if (h.value >= target) {
      result.success = true;
      result.subgraph = current.to_complex();
      result.final_cheeger = h;
      return result;
    }
    result.history.push_back({h.witness_set, h});
    std::vector<int> keep;
    for (int v = 0; v < current.size(); ++v) {
      if (!std::binary_search(h.witness_set.begin(), h.witness_set.end(), current.label[v])) keep.push_back(v);
    }
    current = current.induced(keep);
  }
}

namespace {

std::string fmt(double x) {
  if (std::abs(x - std::round(x)) < 1e-9) return std::to_string(static_cast<long long>(std::llround(x)));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

bool leq(double a, double b) { return a <= b + 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

Report verify_expander_chain(const SimplicialComplex& graph, Rational epsilon, const ProfileOptions& options) {
  const int n = static_cast<int>(graph.vertex_count());
  const ProfileTable cw = profile(graph, Invariant::cutwidth, n, ProfileMode::exact, {}, options);
  const ProfileTable sep = profile(graph, Invariant::separation, n, ProfileMode::exact, {}, options);
  return verify_expander_chain(graph, epsilon, cw, sep);
}

Report verify_expander_chain(const SimplicialComplex& graph, Rational epsilon, const ProfileTable& cw,
                             const ProfileTable& sep) {
  if (graph.dimension() > 1) throw PreconditionError("verify_expander_chain: input must be a graph");
  if (epsilon <= 0) throw PreconditionError("verify_expander_chain: epsilon must be positive");
  const int r = static_cast<int>(graph.vertex_count());
  const int delta = graph.degree();
  if (r < 1 || delta < 1) throw PreconditionError("verify_expander_chain: graph needs at least one edge");
  if (cw.r_max() < r || sep.r_max() < r) throw PreconditionError("verify_expander_chain: tables must reach r = |Z|");

  const Graph g = Graph::from_complex(graph);
  const To1Bounds to1 = to1_bounds(g);
  const double eps = boost::rational_cast<double>(epsilon);
  const double D = delta;
  const Rational eps_r = epsilon * r;

  int k = 0;
  while ((1 << k) < r) ++k;
  const double L = std::log2(eps * r / (3 * D));
  const int L_floor = static_cast<int>(std::floor(L + 1e-12));
  const int L_ceil = static_cast<int>(std::ceil(L - 1e-12));
  auto sep_at = [&](int i) { return static_cast<double>(sep.value_at(std::ldexp(static_cast<double>(r), i - k))); };
  const double sep_r = sep.value_at(r);

  const double e2 = 1 + D + cw.value_at(r);
  double sum_all = 0;
  for (int i = 0; i <= k; ++i) sum_all += sep_at(i);
  const double e3 = 1 + D + D * sum_all;
  double low = 0;
  for (int i = 0; i <= L_floor; ++i) low += sep_at(i);
  double high = 0;
  for (int i = L_ceil; i <= k; ++i) high += sep_at(i);
  const double e4 = 1 + D + D * low + D * high;
  double geometric = 0;
  for (int i = 0; i <= L_floor; ++i) geometric += std::ldexp(1.0, i - 1);
  const double e5 = 1 + D + D * geometric + D * (k - L_ceil + 1) * sep_r;
  const double e6 = 1 + D + D * std::ldexp(1.0, L_floor) + D * (std::log2(3 * D / eps) + 2) * sep_r;
  const double e7 = 1 + D + (2.0 / 3.0) * eps * r + D * (2 + std::log2(3 * D / eps)) * sep_r;

  Report report;
  report.add("eps*r <= cw(Z)", to_string(eps_r), std::to_string(to1.lower), eps_r <= Rational(to1.lower));
  report.add("sTO1(Z) <= 1+D+cw_Z(r)", std::to_string(to1.realized_overlap), fmt(e2), leq(to1.realized_overlap, e2));
  report.add("1+D+cw_Z(r) <= 1+D+D*sum sep(2^(i-k) r)", fmt(e2), fmt(e3), leq(e2, e3));
  report.add("split at log2(eps r/3D)", fmt(e3), fmt(e4), leq(e3, e4));
  report.add("sep(2^(i-k) r) <= 2^(i-1) below the split", fmt(e4), fmt(e5), leq(e4, e5));
  report.add("geometric sum and log bound", fmt(e5), fmt(e6), leq(e5, e6));
  report.add("D*2^floor(L) <= (2/3) eps r", fmt(e6), fmt(e7), leq(e6, e7));

  const Rational size_needed = Rational(12 * (delta + 1)) / epsilon;
  const bool hypothesis = Rational(r) >= size_needed;
  report.add("size hypothesis r >= 12(D+1)/eps", std::to_string(r), to_string(size_needed), hypothesis, false);
  const double proof_constant = eps / (8 * D * std::log2(12 * D / eps));
  const double statement_constant = eps / (8 * std::log2(12 * D / eps));
  if (hypothesis) {
    const double sep_bound = eps * r / (4 * D * std::log2(12 * D / eps));
    report.add("sep(r) >= eps r/(4 D log2(12D/eps))", fmt(sep_r), fmt(sep_bound), leq(sep_bound, sep_r));
  } else {
    report.notes.push_back("hypothesis not met, conclusion not asserted");
  }
  report.add("subgraph fraction (derived) eps/(8 D log2(12D/eps))", fmt(proof_constant), fmt(statement_constant), true,
             false);
  report.notes.push_back(
      "the derivation yields the fraction eps/(8 D log2(12D/eps)); the stated fraction eps/(8 log2(12D/eps)) is larger by "
      "a factor D and is not what the chain proves");
  return report;
}

}  // namespace overlap
