#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "overlap/complex.hpp"
#include "overlap/cubulation.hpp"
#include "overlap/cutwidth.hpp"
#include "overlap/error.hpp"
#include "overlap/graph.hpp"
#include "overlap/horocyclic.hpp"
#include "overlap/io.hpp"
#include "overlap/profiles.hpp"
#include "overlap/separation.hpp"

using namespace overlap;

namespace {

constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string ids(const std::vector<Vertex>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::string ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

SimplicialComplex load(const std::string& path) { return parse_complex(read_file(path)); }

Graph load_graph(const std::string& path) {
  const SimplicialComplex c = load(path);
  return Graph::from_complex(skeleton(c, 1));
}

std::string describe(const LinearArrangement& a) {
  return "width " + std::to_string(a.width) + "\norder " + ids(a.order) + "\ncut_profile " + ints(a.cut_profile) + "\n";
}

std::string describe(const CheegerWitness& h) {
  if (h.infinite) return "h inf\n";
  return "h " + to_string(h.value) + "\nwitness " + ids(h.witness_set) + "\nboundary " + ids(h.boundary) + "\n";
}

std::int64_t pow2_saturating(int e) { return e >= 62 ? INT64_MAX : std::int64_t{1} << e; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlap invariants, coarse constructions and cubulation checks for finite simplicial complexes"};
  app.fallthrough();
  app.require_subcommand(1);

  int threads = 1;
  std::string out_path;
  app.add_option("--threads", threads, "Worker threads for exhaustive searches")->check(CLI::Range(1, 1024));
  app.add_option("--out", out_path, "Write the result here instead of standard output");

  std::string file;
  std::string second_file;
  std::string method = "dp";
  std::uint64_t seed = 1;
  int budget = 20000;
  std::string invariant_name = "cutwidth";
  std::string mode_name = "exact";
  int r_max = 0;
  std::string candidates_path;
  std::string manifest_path;
  bool validate = false;
  std::optional<std::int64_t> k_claim;
  std::optional<std::int64_t> volume_claim;
  std::string cubes_path;
  int q = 0;
  std::string target = "1";
  std::string epsilon = "1";
  int delta = 0;
  std::optional<int> degree_bound;
  std::vector<std::string> family;

  auto* stats_cmd = app.add_subcommand("stats", "Dimension, degree, meeting number and simplex count");
  stats_cmd->add_option("file", file, "Complex file")->required()->check(CLI::ExistingFile);

  auto* cutwidth_cmd = app.add_subcommand("cutwidth", "Cutwidth of the 1-skeleton with an optimal ordering");
  cutwidth_cmd->add_option("file", file, "Complex file")->required()->check(CLI::ExistingFile);
  cutwidth_cmd->add_option("--method", method, "dp, reduced, bruteforce or anneal")
      ->check(CLI::IsMember({"dp", "reduced", "bruteforce", "anneal"}));
  cutwidth_cmd->add_option("--seed", seed, "Seed for anneal");
  cutwidth_cmd->add_option("--budget", budget, "Iterations for anneal")->check(CLI::PositiveNumber);

  auto* cheeger_cmd = app.add_subcommand("cheeger", "Exact vertex Cheeger constant");
  cheeger_cmd->add_option("file", file, "Complex file")->required()->check(CLI::ExistingFile);

  auto* cut_cmd = app.add_subcommand("cut", "Minimum balanced vertex separator");
  cut_cmd->add_option("file", file, "Complex file")->required()->check(CLI::ExistingFile);

  auto* profile_cmd = app.add_subcommand("profile", "Cutwidth or separation profile as CSV");
  profile_cmd->add_option("file", file, "Complex file")->required()->check(CLI::ExistingFile);
  profile_cmd->add_option("--invariant", invariant_name, "cutwidth or separation")
      ->check(CLI::IsMember({"cutwidth", "separation"}));
  profile_cmd->add_option("--rmax", r_max, "Largest r")->required()->check(CLI::NonNegativeNumber);
  profile_cmd->add_option("--mode", mode_name, "exact or candidates")->check(CLI::IsMember({"exact", "candidates"}));
  profile_cmd->add_option("--candidates", candidates_path, "Vertex sets, one per line")->check(CLI::ExistingFile);

  auto* horo_cmd = app.add_subcommand("horocyclic", "Coarse constructions into horocyclic products");
  horo_cmd->require_subcommand(1);
  auto* construct_cmd = horo_cmd->add_subcommand("construct", "Build and summarize the construction of a complex");
  construct_cmd->add_option("file", file, "Complex file")->required()->check(CLI::ExistingFile);
  construct_cmd->add_option("--manifest", manifest_path, "Write the construction manifest here");
  construct_cmd->add_flag("--validate", validate, "Recompute every check and print the report");
  construct_cmd->add_option("--k-claim", k_claim, "Claimed k (default 2^deg)");
  construct_cmd->add_option("--volume-claim", volume_claim, "Claimed volume (default: subdivision size)");
  auto* check_cmd = horo_cmd->add_subcommand("check", "Re-validate a stored manifest");
  check_cmd->add_option("manifest", file, "Manifest file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--k-claim", k_claim, "Claimed k (default 2^deg)");
  check_cmd->add_option("--volume-claim", volume_claim, "Claimed volume (default: subdivision size)");

  auto* translate_cmd = app.add_subcommand("translate", "Best translate of a cube set against the skeleton neighbourhood");
  translate_cmd->add_option("--cubes", cubes_path, "Cube file")->required()->check(CLI::ExistingFile);
  translate_cmd->add_option("--q", q, "Codimension q")->required()->check(CLI::NonNegativeNumber);

  auto* extract_cmd = app.add_subcommand("extract-expander", "Delete Cheeger witnesses until h >= target");
  extract_cmd->add_option("file", file, "Complex file")->required()->check(CLI::ExistingFile);
  extract_cmd->add_option("--target", target, "Target h as p/q")->required();

  auto* certify_cmd = app.add_subcommand("certify", "Expander certificate for a family of graphs");
  certify_cmd->add_option("files", family, "Complex files in family order")->required()->check(CLI::ExistingFile);
  certify_cmd->add_option("--epsilon", epsilon, "epsilon as p/q")->required();
  certify_cmd->add_option("--delta", degree_bound, "Explicit degree bound");

  auto* verify_cmd = app.add_subcommand("verify", "Check inequalities on measured data");
  verify_cmd->require_subcommand(1);
  auto* cwsep_cmd = verify_cmd->add_subcommand("cwsep", "cw(r) <= cw(ceil(r/2)) + delta sep(r) on profile CSVs");
  cwsep_cmd->add_option("cw", file, "Cutwidth profile CSV")->required()->check(CLI::ExistingFile);
  cwsep_cmd->add_option("sep", second_file, "Separation profile CSV")->required()->check(CLI::ExistingFile);
  cwsep_cmd->add_option("--delta", delta, "Delta")->required()->check(CLI::NonNegativeNumber);
  auto* chain_cmd = verify_cmd->add_subcommand("chain", "Evaluate the expander-to-separation inequality chain");
  chain_cmd->add_option("file", file, "Complex file")->required()->check(CLI::ExistingFile);
  chain_cmd->add_option("--epsilon", epsilon, "epsilon as p/q")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  std::string output;
  int status = 0;
  try {
    if (stats_cmd->parsed()) {
      const SimplicialComplex c = load(file);
      const ComplexStats s = stats(c);
      output = "vertices " + std::to_string(c.vertex_count()) + "\nsimplices " + std::to_string(s.simplex_count) +
               "\ndimension " + std::to_string(s.dimension) + "\ndegree " + std::to_string(s.degree) + "\ndelta " +
               std::to_string(s.delta) + "\n";
    } else if (cutwidth_cmd->parsed()) {
      const Graph g = load_graph(file);
      if (method == "dp") {
        const LinearArrangement a = cutwidth_exact(g, {CutwidthLimits{}.max_vertices, threads});
        output = describe(a) + "sweep_overlap " + std::to_string(sweep_overlap(g, a)) + "\nupper " +
                 std::to_string(a.width + g.max_degree() + 1) + "\n";
      } else if (method == "reduced") {
        output = describe(cutwidth_reduced(g, {CutwidthLimits{}.max_vertices, threads}));
      } else if (method == "bruteforce") {
        output = describe(cutwidth_bruteforce(g, threads));
      } else {
        output = describe(cutwidth_heuristic(g, seed, budget));
      }
    } else if (cheeger_cmd->parsed()) {
      output = describe(cheeger_exact(load_graph(file), {SearchLimits{}.max_vertices, threads}));
    } else if (cut_cmd->parsed()) {
      const SeparatorWitness w = separation_cut(load_graph(file), {SearchLimits{}.max_vertices, threads});
      output = "cut " + std::to_string(w.separator.size()) + "\nseparator " + ids(w.separator) + "\nmax_component " +
               std::to_string(w.max_component) + "\n";
    } else if (profile_cmd->parsed()) {
      const Invariant inv = invariant_name == "cutwidth" ? Invariant::cutwidth : Invariant::separation;
      const ProfileMode mode = mode_name == "exact" ? ProfileMode::exact : ProfileMode::candidates;
      std::vector<std::vector<Vertex>> candidates;
      if (mode == ProfileMode::candidates) {
        if (candidates_path.empty()) throw PreconditionError("--mode candidates needs --candidates");
        candidates = parse_candidates(read_file(candidates_path));
      }
      ProfileOptions options;
      options.threads = threads;
      output = emit_csv(profile(load(file), inv, r_max, mode, candidates, options));
    } else if (construct_cmd->parsed() || check_cmd->parsed()) {
      CoarseConstruction cc;
      if (construct_cmd->parsed()) {
        cc = coarse_construct(load(file), {ConstructionLimits{}.max_vertices, threads});
        if (!manifest_path.empty()) write_file(manifest_path, write_manifest(cc));
      } else {
        cc = load_manifest(read_file(file));
        validate = true;
      }
      const std::size_t lattice = cc.subdivision ? cc.subdivision->vertex_count() : 0;
      std::ostringstream summary;
      summary << "d " << cc.d << "\nell " << cc.ell << "\nsource_vertices " << cc.source.vertex_count()
              << "\nsubdivision_vertices " << lattice << "\ntarget_vertices " << cc.target.vertex_count()
              << "\npieces " << cc.pieces.size() << "\nmeasured_k " << cc.measured_k << "\nvolume " << cc.volume
              << "\n";
      output = summary.str();
      if (validate) {
        const std::int64_t k = k_claim.value_or(pow2_saturating(cc.source.degree()));
        const std::int64_t vol = volume_claim.value_or(static_cast<std::int64_t>(lattice));
        const Report report = validate_construction(cc, k, vol, threads);
        output += emit_csv(report);
        if (!report.passed()) status = kFailed;
      }
    } else if (translate_cmd->parsed()) {
      const CubeFile cubes = parse_cubes(read_file(cubes_path));
      const TranslateResult t = find_translate(cubes.cubes, cubes.r, q, threads);
      std::string v;
      for (std::size_t i = 0; i < t.v.size(); ++i) v += (i ? " " : "") + std::to_string(t.v[i]);
      output = "v " + v + "\ncount " + std::to_string(t.count) + "\nbound " + std::to_string(t.bound) + "\n";
    } else if (extract_cmd->parsed()) {
      const SimplicialComplex g = skeleton(load(file), 1);
      const ExtractionResult result = extract_expander(g, parse_rational(target), {SearchLimits{}.max_vertices, threads});
      output = std::string(result.success ? "success" : "failure") + "\n";
      for (const auto& step : result.history) {
        output += "removed " + ids(step.removed) + " ratio " + to_string(step.cheeger.value) + "\n";
      }
      output += describe(result.final_cheeger) + emit_complex(result.subgraph);
      if (!result.success) status = kFailed;
    } else if (certify_cmd->parsed()) {
      std::vector<SimplicialComplex> members;
      for (const auto& path : family) members.push_back(skeleton(load(path), 1));
      const CertificateResult result =
          expander_certificate(members, parse_rational(epsilon), degree_bound, {CutwidthLimits{}.max_vertices, threads});
      if (result.certificate) {
        output = "certificate epsilon " + to_string(result.certificate->epsilon) + " delta " +
                 std::to_string(result.certificate->delta) + "\n";
        for (const auto& m : result.certificate->members) {
          output += "member " + std::to_string(m.index) + " size " + std::to_string(m.size) + " cutwidth " +
                    std::to_string(m.cutwidth) + "\n";
        }
      } else {
        output = "refusal " + result.refusal + "\n";
        status = kFailed;
      }
    } else if (cwsep_cmd->parsed()) {
      const ProfileTable cw = parse_profile_csv(read_file(file), Invariant::cutwidth);
      const ProfileTable sep = parse_profile_csv(read_file(second_file), Invariant::separation);
      const Report report = verify_cwsep(cw, sep, delta);
      output = emit_csv(report);
      if (!report.passed()) status = kFailed;
    } else if (chain_cmd->parsed()) {
      ProfileOptions options;
      options.threads = threads;
      const Report report = verify_expander_chain(skeleton(load(file), 1), parse_rational(epsilon), options);
      output = emit_csv(report);
      for (const auto& note : report.notes) std::cerr << "note: " << note << "\n";
      if (!report.passed()) status = kFailed;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (out_path.empty()) {
    std::cout << output;
  } else {
    write_file(out_path, output);
  }
  return status;
}
