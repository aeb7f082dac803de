#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace eigloc {

using NodeId = std::size_t;

/// Group id for a node that carries no label.
inline constexpr int kNoGroup = -1;

struct Edge {
  NodeId i = 0;
  NodeId j = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  double w;
};

/// Weighted degrees d_i = sum_j w_ij.
class DegreeVector {
 public:
  DegreeVector() = default;
  explicit DegreeVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double max() const noexcept;
  double total() const noexcept;
  bool is_isolated(NodeId i) const { return values_[i] == 0.0; }

 private:
  std::vector<double> values_;
};

/// Undirected weighted graph with optional per-node group labels.
///
/// Edges are stored once with i < j, sorted lexicographically. Zero-weight
/// edges are dropped on construction; self loops, out-of-range endpoints,
/// negative weights and repeated pairs are rejected. Group labels are either
/// empty or one entry per node (kNoGroup for unlabeled nodes); the same holds
/// for the secondary `subgroups` labels used for 2-module membership.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, std::vector<Edge> edges,
                std::vector<int> groups = {}, std::vector<int> subgroups = {});

  std::size_t n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const DegreeVector& degrees() const noexcept { return degrees_; }

  std::span<const Neighbor> neighbors(NodeId i) const;

  bool has_groups() const noexcept { return !groups_.empty(); }
  bool has_subgroups() const noexcept { return !subgroups_.empty(); }
  std::span<const int> groups() const noexcept { return groups_; }
  std::span<const int> subgroups() const noexcept { return subgroups_; }

  /// Copy with replaced labels (edges untouched).
  WeightedGraph with_labels(std::vector<int> groups,
                            std::vector<int> subgroups = {}) const;

  /// Distinct group ids present, ascending, excluding kNoGroup.
  std::vector<int> group_ids() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.groups_ == b.groups_ &&
           a.subgroups_ == b.subgroups_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> groups_;
  std::vector<int> subgroups_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  DegreeVector degrees_;
};

/// Connected component index per node, numbered in order of lowest member.
std::vector<std::size_t> connected_components(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);

/// Subgraph induced by `subset` (node k of the result is subset[k]).
/// Labels are carried over. Throws InvalidArgument on out-of-range or
/// repeated nodes.
WeightedGraph induced_subgraph(const WeightedGraph& g,
                               std::span<const NodeId> subset);

/// Same graph with node i renamed to perm[i]; labels move with the nodes.
WeightedGraph permute_nodes(const WeightedGraph& g,
                            std::span<const NodeId> perm);

}  // namespace eigloc
