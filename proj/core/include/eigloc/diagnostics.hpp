#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eigloc/clustering.hpp"
#include "eigloc/eigensolver.hpp"
#include "eigloc/graph.hpp"
#include "eigloc/localization.hpp"

namespace eigloc {

/// Spectral depth inspected when the caller does not choose one.
inline constexpr std::size_t kDefaultAnalysisDepth = 100;

struct GroupMass {
  std::size_t rank;
  int group;
  double l2;
  double l1;
};

/// l2/l1 mass fractions of every eigenvector on every group. Rows are ordered
/// by rank, then group id. Throws MissingLabels unless every node has a label.
std::vector<GroupMass> group_mass_table(const Eigenbasis& basis, std::span<const int> labels);

struct EigenvectorRecord {
  std::size_t rank;
  double lambda;
  double ipr;
  bool degenerate;
  Histogram histogram;
  CSLVector csl;
  /// Group carrying the largest l2 fraction; empty for unlabeled graphs.
  std::optional<GroupMass> top_group;
};

struct RankedPartition {
  std::size_t rank;
  Partition partition;
};

struct AnalysisOptions {
  std::optional<std::size_t> k;  // default min(n, kDefaultAnalysisDepth)
  std::vector<std::size_t> sweep_ranks;
  std::size_t window = kDefaultTransitionWindow;
  double threshold = kDefaultTransitionFactor;
  std::size_t bins = kDefaultBins;
  SolverOptions solver;
};

struct AnalysisReport {
  std::size_t n = 0;
  Eigenbasis basis{Eigen::VectorXd(), Eigen::MatrixXd()};
  std::vector<double> square_spectrum;
  IPRCurve curve;
  /// Empty when the spectrum is too short for the transition window.
  std::optional<TransitionReport> transition;
  std::vector<EigenvectorRecord> records;
  std::vector<GroupMass> groups;
  std::vector<RankedPartition> partitions;
  std::vector<std::string> warnings;
};

/// Full pipeline: spectrum, IPR curve, transition, per-rank histograms, CSL and
/// group concentration, and sweep cuts at the requested ranks. Throws
/// InvalidArgument for k or sweep ranks out of range and propagates component
/// errors.
AnalysisReport analyze(const WeightedGraph& g, const AnalysisOptions& options = {});

}  // namespace eigloc
