// eigloc command-line front end.
//
// Exit status: 0 success, 2 input or parse error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eigloc/clustering.hpp"
#include "eigloc/diagnostics.hpp"
#include "eigloc/eigensolver.hpp"
#include "eigloc/error.hpp"
#include "eigloc/io.hpp"
#include "eigloc/localization.hpp"
#include "eigloc/twolevel.hpp"

namespace fs = std::filesystem;
using namespace eigloc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string graph;
  std::string labels;
  std::string out;
  std::optional<std::size_t> k;
  std::vector<std::size_t> ranks;
  std::size_t bins = kDefaultBins;
  double tau = kDefaultTransitionFactor;
  std::size_t window = kDefaultTransitionWindow;
  SolverOptions solver;
};

WeightedGraph load_graph(const Common& c) {
  std::optional<fs::path> labels;
  if (!c.labels.empty()) labels = c.labels;
  return parse_graph(c.graph, labels);
}

// Writes to --out when given, else stdout.
void deliver(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + out_path);
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + out_path);
}

std::size_t depth(const Common& c, const WeightedGraph& g) {
  return c.k.value_or(std::min(g.n(), kDefaultAnalysisDepth));
}

void require_ranks(const Common& c, std::size_t k) {
  if (c.ranks.empty()) throw Error(ErrorCode::InvalidArgument, "--ranks is required");
  for (std::size_t r : c.ranks)
    if (r >= k) throw Error(ErrorCode::InvalidArgument, "rank " + std::to_string(r) + " not below k = " + std::to_string(k));
}

void add_graph(CLI::App* cmd, Common& c) {
  cmd->add_option("graph", c.graph, "MatrixMarket graph file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--labels", c.labels, "node label CSV (node_id,group_id[,subgroup_id])")
      ->check(CLI::ExistingFile);
}

void add_depth(CLI::App* cmd, Common& c) {
  cmd->add_option("--k", c.k, "number of eigenpairs (default min(n, 100))");
  cmd->add_option("--dense-threshold", c.solver.dense_threshold, "largest n solved densely")
      ->capture_default_str();
  cmd->add_option("--max-basis", c.solver.lanczos_max_basis, "Lanczos basis cap (0 = n)");
}

void add_transition(CLI::App* cmd, Common& c) {
  cmd->add_option("--tau", c.tau, "transition factor")->capture_default_str();
  cmd->add_option("--window", c.window, "transition window")->capture_default_str();
}

void add_ranks(CLI::App* cmd, Common& c, const char* help) {
  cmd->add_option("--ranks", c.ranks, help)->delimiter(',');
}

int run_generate(const std::string& spec_path, std::optional<std::uint64_t> seed, const Common& c) {
  TwoLevelSpec spec = load_spec(spec_path);
  if (seed) spec.seed = *seed;
  for (const std::string& w : spec_warnings(spec)) std::cerr << "warning: " << w << '\n';
  WeightedGraph g = generate_bead_chain(spec);
  std::optional<fs::path> labels;
  if (!c.labels.empty()) labels = c.labels;
  write_graph(g, c.out, labels);
  std::cerr << "wrote " << g.n() << " nodes, " << g.edge_count() << " edges\n";
  return kExitOk;
}

int run_analyze(const Common& c) {
  WeightedGraph g = load_graph(c);
  AnalysisOptions opts;
  opts.k = c.k;
  opts.sweep_ranks = c.ranks;
  opts.window = c.window;
  opts.threshold = c.tau;
  opts.bins = c.bins;
  opts.solver = c.solver;
  AnalysisReport report = analyze(g, opts);
  emit_report(report, c.out);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
  return kExitOk;
}

int run_ipr(const Common& c) {
  WeightedGraph g = load_graph(c);
  IPRCurve curve = ipr_curve(spectrum_random_walk(g, depth(c, g), c.solver));
  std::ostringstream s;
  s << "rank,eigenvalue,ipr,degenerate_flag\n";
  for (const IPRPoint& p : curve.entries)
    s << p.rank << ',' << format_real(p.lambda) << ',' << format_real(p.ipr) << ',' << (p.degenerate ? 1 : 0)
      << '\n';
  deliver(c.out, s.str());
  return kExitOk;
}

int run_csl(const Common& c) {
  WeightedGraph g = load_graph(c);
  const std::size_t k = depth(c, g);
  require_ranks(c, k);
  Eigenbasis basis = spectrum_random_walk(g, k, c.solver);
  std::ostringstream s;
  s << "rank,node,value,csl\n";
  for (std::size_t r : c.ranks) {
    auto v = basis.vector(r);
    CSLVector scores = csl(v, r);
    for (std::size_t i = 0; i < v.size(); ++i)
      s << r << ',' << i << ',' << format_real(v[i]) << ',' << format_real(scores.scores[i]) << '\n';
  }
  deliver(c.out, s.str());
  return kExitOk;
}

int run_sweep(const Common& c) {
  WeightedGraph g = load_graph(c);
  const std::size_t k = depth(c, g);
  require_ranks(c, k);
  Eigenbasis basis = spectrum_random_walk(g, k, c.solver);
  std::vector<RankedPartition> parts;
  for (std::size_t r : c.ranks) parts.push_back({r, sweep_cut(basis.vector(r), g)});
  deliver(c.out, partitions_json(parts));
  return kExitOk;
}

int run_transition(const Common& c) {
  WeightedGraph g = load_graph(c);
  IPRCurve curve = ipr_curve(spectrum_random_walk(g, depth(c, g), c.solver));
  deliver(c.out, transition_json(detect_transition(curve, c.window, c.tau)));
  return kExitOk;
}

int run_compare(const Common& c, std::optional<int> group) {
  WeightedGraph g = load_graph(c);
  if (!g.has_groups()) throw Error(ErrorCode::MissingLabels, "compare-restriction needs --labels");
  const std::size_t k = depth(c, g);
  require_ranks(c, k);
  if (c.ranks.size() != 1) throw Error(ErrorCode::InvalidArgument, "compare-restriction takes exactly one rank");
  const std::size_t rank = c.ranks.front();
  Eigenbasis basis = spectrum_random_walk(g, k, c.solver);
  auto v = basis.vector(rank);

  auto members = [&](int grp) {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < g.n(); ++i)
      if (g.groups()[i] == grp) out.push_back(i);
    return out;
  };
  if (!group) {
    double best = -1.0;
    for (int grp : g.group_ids()) {
      const double m = mass_concentration(v, members(grp)).l2;
      if (m > best) {
        best = m;
        group = grp;
      }
    }
  }
  const std::vector<NodeId> subset = members(*group);
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "no node carries group " + std::to_string(*group));
  RestrictionComparison cmp = restrict_and_compare(v, subset, g, c.solver);
  const std::size_t m = subset.size();
  Partition pr = sweep_cut(std::span<const double>(cmp.v_restricted.data(), m), cmp.subgraph);
  Partition pl = sweep_cut(std::span<const double>(cmp.v_local.data(), m), cmp.subgraph);

  std::ostringstream s;
  s << "{\n  \"rank\": " << rank << ",\n  \"group\": " << *group << ",\n  \"nodes\": " << m
    << ",\n  \"l2_mass\": " << format_real(mass_concentration(v, subset).l2)
    << ",\n  \"distance\": " << format_real(cmp.distance)
    << ",\n  \"sweep_agreement\": " << format_real(partition_agreement(pr, pl)) << "\n}\n";
  deliver(c.out, s.str());
  return kExitOk;
}

int run_migration(const std::string& flows, const std::string& pops, const Common& c) {
  WeightedGraph g = migration_similarity(parse_migration(flows, pops));
  write_graph(g, c.out);
  std::cerr << "wrote " << g.n() << " nodes, " << g.edge_count() << " edges\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvector localization diagnostics for weighted graphs"};
  app.require_subcommand(1);
  Common c;

  std::string spec_path;
  std::optional<std::uint64_t> seed;
  auto* gen = app.add_subcommand("generate", "build a bead-chain graph from a JSON spec");
  gen->add_option("spec", spec_path, "spec JSON file")->required()->check(CLI::ExistingFile);
  gen->add_option("--out", c.out, "output MatrixMarket file")->required();
  gen->add_option("--labels", c.labels, "also write node labels to this CSV");
  gen->add_option("--seed", seed, "override the spec seed");

  auto* ana = app.add_subcommand("analyze", "full report into a directory");
  add_graph(ana, c);
  add_depth(ana, c);
  add_ranks(ana, c, "ranks to sweep-cut, comma separated");
  ana->add_option("--bins", c.bins, "histogram bins")->capture_default_str();
  add_transition(ana, c);
  ana->add_option("--out", c.out, "report directory")->required();

  auto* ipr_cmd = app.add_subcommand("ipr", "IPR curve as CSV");
  add_graph(ipr_cmd, c);
  add_depth(ipr_cmd, c);
  ipr_cmd->add_option("--out", c.out, "output file (default stdout)");

  auto* csl_cmd = app.add_subcommand("csl", "eigenvector entries and CSL scores as CSV");
  add_graph(csl_cmd, c);
  add_depth(csl_cmd, c);
  add_ranks(csl_cmd, c, "ranks to print, comma separated");
  csl_cmd->add_option("--out", c.out, "output file (default stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "minimum-conductance sweep cuts as JSON");
  add_graph(sweep_cmd, c);
  add_depth(sweep_cmd, c);
  add_ranks(sweep_cmd, c, "ranks to sweep, comma separated");
  sweep_cmd->add_option("--out", c.out, "output file (default stdout)");

  auto* tr_cmd = app.add_subcommand("transition", "localization transition as JSON");
  add_graph(tr_cmd, c);
  add_depth(tr_cmd, c);
  add_transition(tr_cmd, c);
  tr_cmd->add_option("--out", c.out, "output file (default stdout)");

  std::optional<int> group;
  auto* cmp_cmd = app.add_subcommand("compare-restriction",
                                     "compare an eigenvector on one group with the group subgraph's own");
  add_graph(cmp_cmd, c);
  add_depth(cmp_cmd, c);
  add_ranks(cmp_cmd, c, "the single rank to compare");
  cmp_cmd->add_option("--group", group, "group to restrict to (default: largest l2 mass)");
  cmp_cmd->add_option("--out", c.out, "output file (default stdout)");

  std::string flows, pops;
  auto* mig = app.add_subcommand("migration-kernel", "similarity graph from flows and populations");
  mig->add_option("flows", flows, "MatrixMarket integer flow counts")->required()->check(CLI::ExistingFile);
  mig->add_option("populations", pops, "CSV node_id,population")->required()->check(CLI::ExistingFile);
  mig->add_option("--out", c.out, "output MatrixMarket file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*gen) return run_generate(spec_path, seed, c);
    if (*ana) return run_analyze(c);
    if (*ipr_cmd) return run_ipr(c);
    if (*csl_cmd) return run_csl(c);
    if (*sweep_cmd) return run_sweep(c);
    if (*tr_cmd) return run_transition(c);
    if (*cmp_cmd) return run_compare(c, group);
    if (*mig) return run_migration(flows, pops, c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return category(e.code()) == ErrorCategory::Numerical ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
