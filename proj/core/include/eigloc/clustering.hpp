#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eigloc/eigensolver.hpp"
#include "eigloc/graph.hpp"
#include "eigloc/localization.hpp"

namespace eigloc {

/// Two-way node split. `side[i]` is true for nodes on the first side (the
/// sweep prefix, or the nonnegative entries of a sign cut).
struct Partition {
  std::vector<bool> side;
  /// Conductance against the graph the split was evaluated on; empty for
  /// sign cuts and for splits with an empty side.
  std::optional<double> conductance;

  std::size_t size() const noexcept { return side.size(); }
  std::size_t first_side_count() const;
  /// True when one side is empty.
  bool one_sided() const;
};

/// phi(S) = cut(S) / min(vol S, vol S'), or empty if either volume is zero.
std::optional<double> conductance(const WeightedGraph& g, const std::vector<bool>& side);

/// Minimum-conductance prefix of the nodes ordered by v descending (ties by
/// index). The smallest prefix wins among equal conductances. Throws
/// SizeMismatch, InvalidArgument (n < 2), DisconnectedGraph.
Partition sweep_cut(std::span<const double> v, const WeightedGraph& g);

/// side_i = (v_i >= 0). Throws InvalidArgument for the zero vector.
Partition sign_cut(std::span<const double> v);

/// Fraction of nodes on which the partitions agree, maximized over the two
/// ways of matching their sides. Throws SizeMismatch.
double partition_agreement(const Partition& a, const Partition& b);

struct RestrictionComparison {
  /// max_i |v_restricted_i - s v_local_i| minimized over the sign s.
  double distance;
  Eigen::VectorXd v_restricted;
  Eigen::VectorXd v_local;
  WeightedGraph subgraph;
};

/// Compares a (typically localized) eigenvector of the full graph, cut down
/// to `subset` and renormalized, against the first nontrivial random-walk
/// eigenvector of the subgraph that `subset` induces. Throws SubsetTooSmall,
/// SizeMismatch, DisconnectedSubgraph.
RestrictionComparison restrict_and_compare(std::span<const double> v_full,
                                           std::span<const NodeId> subset,
                                           const WeightedGraph& g,
                                           const SolverOptions& options = {});

inline constexpr std::size_t kDefaultTransitionWindow = 3;
inline constexpr double kDefaultTransitionFactor = 2.5;

struct TransitionReport {
  /// First rank whose IPR jumps to at least `factor` times the median IPR of
  /// the nontrivial ranks before it.
  std::optional<std::size_t> rank;
  /// Median IPR over ranks 1..rank-1 (over all nontrivial ranks if no
  /// transition was found).
  double baseline = 0.0;
  /// ipr(rank) / baseline, or the largest such ratio seen if none qualified.
  double observed_factor = 0.0;
  std::size_t window = kDefaultTransitionWindow;
  double threshold = kDefaultTransitionFactor;
};

/// Scans ranks j > window (and j >= 2) in order and reports the first with
/// ipr_j >= threshold * median(ipr_1 .. ipr_{j-1}). Rank 0, the trivial
/// eigenvector, never enters the baseline. Throws CurveTooShort when the curve
/// has fewer than window + 1 entries, InvalidArgument for threshold <= 0.
TransitionReport detect_transition(const IPRCurve& curve,
                                   std::size_t window = kDefaultTransitionWindow,
                                   double threshold = kDefaultTransitionFactor);

}  // namespace eigloc
