#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eigloc/diagnostics.hpp"
#include "eigloc/graph.hpp"
#include "eigloc/operators.hpp"
#include "eigloc/twolevel.hpp"

namespace eigloc {

/// Shortest form of `value` with 17 significant digits ("%.17g"), which
/// round-trips every double.
std::string format_real(double value);

// Graph files: MatrixMarket "matrix coordinate" with field real, integer or
// pattern and symmetry general or symmetric. Indices in the file are 1-based.
// Symmetric storage lists each edge once (either triangle); general storage
// must list both orientations with equal values. Zero entries are skipped.
// Errors: ParseError(line), DuplicateEdge, NegativeWeight.

WeightedGraph read_graph(std::istream& in);
WeightedGraph parse_graph(const std::filesystem::path& path,
                          const std::optional<std::filesystem::path>& label_path = std::nullopt);

/// Writes "matrix coordinate real symmetric" with one lower-triangle entry per
/// edge and weights printed by format_real.
void write_graph(const WeightedGraph& g, std::ostream& out);
void write_graph(const WeightedGraph& g, const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& label_path = std::nullopt);

// Label files: CSV rows node_id,group_id[,subgroup_id] with 0-based node ids;
// an optional header row and empty fields (no label) are allowed.

struct NodeLabels {
  std::vector<int> groups;
  std::vector<int> subgroups;  // empty when the file has no third column
};

NodeLabels read_labels(std::istream& in, std::size_t n);
void write_labels(const WeightedGraph& g, std::ostream& out);

// Migration input: flows as MatrixMarket integer (symmetric or general,
// no diagonal), populations as CSV rows node_id,population.
// Errors: ParseError(line), MissingPopulation(i), AsymmetricFlow,
// NonpositivePopulation.

MigrationInput read_migration(std::istream& flows, std::istream& populations);
MigrationInput parse_migration(const std::filesystem::path& flows_path,
                               const std::filesystem::path& populations_path);

// TwoLevel spec documents (JSON):
//   { "beads": [ {"kind": "er", "n": 100, "p": 0.2, "label": 0},
//                {"kind": "two_module", "n1": 50, "n2": 50, "p1": 0.8, "p2": 0.2} ],
//     "interaction": {"kind": "path_random" | "global_random", "p": 0.05}
//                  | {"kind": "path_identity", "eps": 0.1},
//     "seed": 7 }
// An ER bead whose "p" is omitted or "match" takes matched_er_density of the
// first 2-module bead. "label" defaults to the bead index. Unknown keys are
// rejected. Errors: InvalidSpec, UnequalBeadSizes.

TwoLevelSpec spec_from_json(std::string_view text);
std::string spec_to_json(const TwoLevelSpec& spec);
TwoLevelSpec load_spec(const std::filesystem::path& path);

std::string transition_json(const std::optional<TransitionReport>& report);
std::string partitions_json(const std::vector<RankedPartition>& partitions);

/// Writes spectrum.csv, ipr.csv, eigvec_<j>.csv, hist_<j>.csv, groups.csv,
/// transition.json and partitions.json into `out_dir` (created if needed).
/// Output is a pure function of the report. Throws IoError.
void emit_report(const AnalysisReport& report, const std::filesystem::path& out_dir);

}  // namespace eigloc
