#include "eigloc/operators.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "eigloc/error.hpp"

namespace eigloc {

OperatorMatrix::OperatorMatrix(OperatorKind kind, SparseMatrix entries,
                               DegreeVector degrees)
    : kind_(kind), entries_(std::move(entries)), degrees_(std::move(degrees)) {
  entries_.makeCompressed();
}

double OperatorMatrix::coeff(std::size_t i, std::size_t j) const {
  return entries_.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

Eigen::MatrixXd OperatorMatrix::dense(std::size_t max_nodes) const {
  if (size() > max_nodes) {
    throw Error(ErrorCode::DenseLimitExceeded,
                "refusing to densify " + std::to_string(size()) +
                    " nodes (limit " + std::to_string(max_nodes) + ")");
  }
  return Eigen::MatrixXd(entries_);
}

namespace {

using Triplet = Eigen::Triplet<double>;

void require_no_isolated(const WeightedGraph& g) {
  for (NodeId i = 0; i < g.n(); ++i) {
    if (g.degrees().is_isolated(i)) {
      throw Error(ErrorCode::IsolatedNode,
                  "node " + std::to_string(i) + " has zero degree", i);
    }
  }
}

SparseMatrix from_triplets(std::size_t n, const std::vector<Triplet>& t) {
  const auto dim = static_cast<Eigen::Index>(n);
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

OperatorMatrix laplacian(const WeightedGraph& g) {
  std::vector<Triplet> t;
  t.reserve(g.n() + 2 * g.edge_count());
  for (NodeId i = 0; i < g.n(); ++i) {
    const auto row = static_cast<int>(i);
    if (g.degrees()[i] != 0.0) t.emplace_back(row, row, g.degrees()[i]);
    for (const Neighbor& nb : g.neighbors(i)) {
      t.emplace_back(row, static_cast<int>(nb.node), -nb.w);
    }
  }
  return OperatorMatrix(OperatorKind::Laplacian, from_triplets(g.n(), t),
                        g.degrees());
}

OperatorMatrix random_walk(const WeightedGraph& g) {
  require_no_isolated(g);
  std::vector<Triplet> t;
  t.reserve(2 * g.edge_count());
  for (NodeId i = 0; i < g.n(); ++i) {
    const double d = g.degrees()[i];
    for (const Neighbor& nb : g.neighbors(i)) {
      t.emplace_back(static_cast<int>(i), static_cast<int>(nb.node), nb.w / d);
    }
  }
  return OperatorMatrix(OperatorKind::RandomWalk, from_triplets(g.n(), t),
                        g.degrees());
}

OperatorMatrix normalized_adjacency(const WeightedGraph& g) {
  require_no_isolated(g);
  std::vector<double> inv_sqrt(g.n());
  for (NodeId i = 0; i < g.n(); ++i) inv_sqrt[i] = 1.0 / std::sqrt(g.degrees()[i]);
  std::vector<Triplet> t;
  t.reserve(2 * g.edge_count());
  for (NodeId i = 0; i < g.n(); ++i) {
    for (const Neighbor& nb : g.neighbors(i)) {
      // Same expression for (i,j) and (j,i) keeps the result exactly symmetric.
      const double v = nb.w * (inv_sqrt[std::min(i, nb.node)] *
                               inv_sqrt[std::max(i, nb.node)]);
      t.emplace_back(static_cast<int>(i), static_cast<int>(nb.node), v);
    }
  }
  return OperatorMatrix(OperatorKind::NormalizedAdjacency,
                        from_triplets(g.n(), t), g.degrees());
}

WeightedGraph migration_similarity(const MigrationInput& m) {
  if (m.n == 0) throw Error(ErrorCode::InvalidArgument, "no counties");
  if (m.populations.size() != m.n) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(m.n) + " populations, got " +
                    std::to_string(m.populations.size()));
  }
  for (std::size_t i = 0; i < m.n; ++i) {
    if (!(m.populations[i] > 0.0)) {
      throw Error(ErrorCode::NonpositivePopulation,
                  "county " + std::to_string(i) + " has population " +
                      std::to_string(m.populations[i]),
                  i);
    }
  }

  // Accumulate both orientations; an entry stored once in either triangle
  // counts as symmetric storage.
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> directed;
  for (const FlowEntry& f : m.flows) {
    if (f.i >= m.n || f.j >= m.n) {
      throw Error(ErrorCode::InvalidArgument, "flow references unknown county");
    }
    if (f.i == f.j) {
      if (f.count == 0) continue;
      throw Error(ErrorCode::InvalidArgument,
                  "self flow at county " + std::to_string(f.i), f.i);
    }
    if (f.count < 0) {
      throw Error(ErrorCode::InvalidArgument, "negative flow count", f.i);
    }
    auto [it, fresh] = directed.emplace(std::pair(f.i, f.j), f.count);
    if (!fresh) {
      throw Error(ErrorCode::AsymmetricFlow,
                  "flow (" + std::to_string(f.i) + "," + std::to_string(f.j) +
                      ") given twice",
                  f.i);
    }
  }

  std::vector<Edge> edges;
  for (const auto& [key, count] : directed) {
    auto [i, j] = key;
    auto reverse = directed.find({j, i});
    if (reverse != directed.end() && reverse->second != count) {
      throw Error(ErrorCode::AsymmetricFlow,
                  "M(" + std::to_string(i) + "," + std::to_string(j) + ")=" +
                      std::to_string(count) + " but M(" + std::to_string(j) +
                      "," + std::to_string(i) + ")=" +
                      std::to_string(reverse->second),
                  i);
    }
    if (reverse != directed.end() && j < i) continue;  // emitted from (j,i)
    if (count == 0) continue;
    const auto flow = static_cast<double>(count);
    edges.push_back(
        {i, j, flow * flow / (m.populations[i] * m.populations[j])});
  }
  return WeightedGraph(m.n, std::move(edges));
}

}  // namespace eigloc
