#include "eigloc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "eigloc/error.hpp"

namespace eigloc {

DegreeVector::DegreeVector(std::vector<double> values)
    : values_(std::move(values)) {}

double DegreeVector::max() const noexcept {
  double m = 0.0;
  for (double d : values_) m = std::max(m, d);
  return m;
}

double DegreeVector::total() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

namespace {

void check_labels(const std::vector<int>& labels, std::size_t n,
                  const char* what) {
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::InvalidGraph,
                std::string(what) + " must be empty or have one entry per node");
  }
  for (int g : labels) {
    if (g < kNoGroup) {
      throw Error(ErrorCode::InvalidGraph,
                  std::string(what) + " ids must be nonnegative");
    }
  }
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges,
                             std::vector<int> groups,
                             std::vector<int> subgroups)
    : n_(n), groups_(std::move(groups)), subgroups_(std::move(subgroups)) {
  if (n == 0) throw Error(ErrorCode::InvalidGraph, "graph needs at least one node");
  check_labels(groups_, n, "group labels");
  check_labels(subgroups_, n, "subgroup labels");

  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.j >= n) {
      throw Error(ErrorCode::InvalidGraph,
                  "edge endpoint " + std::to_string(e.j) + " out of range", e.j);
    }
    if (e.i == e.j) {
      throw Error(ErrorCode::InvalidGraph,
                  "self loop at node " + std::to_string(e.i), e.i);
    }
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::NegativeWeight,
                  "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                      ") has weight " + std::to_string(e.w),
                  e.i);
    }
    if (e.w == 0.0) continue;
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge (" + std::to_string(edges_[k].i) + "," +
                      std::to_string(edges_[k].j) + ") appears twice",
                  edges_[k].i);
    }
  }

  // CSR adjacency, neighbors sorted by id.
  std::vector<std::size_t> count(n, 0);
  for (const Edge& e : edges_) {
    ++count[e.i];
    ++count[e.j];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + count[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.i]++] = {e.j, e.w};
    adjacency_[fill[e.j]++] = {e.i, e.w};
  }
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(first, last,
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    for (auto it = first; it != last; ++it) deg[i] += it->w;
  }
  degrees_ = DegreeVector(std::move(deg));
}

std::span<const Neighbor> WeightedGraph::neighbors(NodeId i) const {
  return std::span<const Neighbor>(adjacency_).subspan(
      offsets_[i], offsets_[i + 1] - offsets_[i]);
}

WeightedGraph WeightedGraph::with_labels(std::vector<int> groups,
                                         std::vector<int> subgroups) const {
  return WeightedGraph(n_, edges_, std::move(groups), std::move(subgroups));
}

std::vector<int> WeightedGraph::group_ids() const {
  std::vector<int> ids;
  for (int g : groups_) {
    if (g != kNoGroup) ids.push_back(g);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<std::size_t> connected_components(const WeightedGraph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(g.n(), unset);
  std::size_t next = 0;
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < g.n(); ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    frontier.push(s);
    while (!frontier.empty()) {
      NodeId u = frontier.front();
      frontier.pop();
      for (const Neighbor& nb : g.neighbors(u)) {
        if (comp[nb.node] == unset) {
          comp[nb.node] = next;
          frontier.push(nb.node);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool is_connected(const WeightedGraph& g) {
  auto comp = connected_components(g);
  return std::all_of(comp.begin(), comp.end(),
                     [](std::size_t c) { return c == 0; });
}

WeightedGraph induced_subgraph(const WeightedGraph& g,
                               std::span<const NodeId> subset) {
  constexpr auto absent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> local(g.n(), absent);
  for (std::size_t k = 0; k < subset.size(); ++k) {
    NodeId v = subset[k];
    if (v >= g.n()) {
      throw Error(ErrorCode::InvalidArgument,
                  "subset node " + std::to_string(v) + " out of range", v);
    }
    if (local[v] != absent) {
      throw Error(ErrorCode::InvalidArgument,
                  "subset node " + std::to_string(v) + " repeated", v);
    }
    local[v] = k;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.i] != absent && local[e.j] != absent) {
      edges.push_back({local[e.i], local[e.j], e.w});
    }
  }
  std::vector<int> groups, subgroups;
  if (g.has_groups()) {
    for (NodeId v : subset) groups.push_back(g.groups()[v]);
  }
  if (g.has_subgroups()) {
    for (NodeId v : subset) subgroups.push_back(g.subgroups()[v]);
  }
  return WeightedGraph(subset.size(), std::move(edges), std::move(groups),
                       std::move(subgroups));
}

WeightedGraph permute_nodes(const WeightedGraph& g,
                            std::span<const NodeId> perm) {
  if (perm.size() != g.n()) {
    throw Error(ErrorCode::SizeMismatch, "permutation length differs from n");
  }
  std::vector<bool> seen(g.n(), false);
  for (NodeId p : perm) {
    if (p >= g.n() || seen[p]) {
      throw Error(ErrorCode::InvalidArgument, "not a permutation");
    }
    seen[p] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.i], perm[e.j], e.w});
  std::vector<int> groups, subgroups;
  if (g.has_groups()) {
    groups.resize(g.n());
    for (NodeId i = 0; i < g.n(); ++i) groups[perm[i]] = g.groups()[i];
  }
  if (g.has_subgroups()) {
    subgroups.resize(g.n());
    for (NodeId i = 0; i < g.n(); ++i) subgroups[perm[i]] = g.subgroups()[i];
  }
  return WeightedGraph(g.n(), std::move(edges), std::move(groups),
                       std::move(subgroups));
}

}  // namespace eigloc
