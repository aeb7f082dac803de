#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "eigloc/graph.hpp"

namespace eigloc {

/// Largest n for which operators and the eigensolver will build dense n x n
/// storage unless the caller raises the limit.
inline constexpr std::size_t kDefaultDenseThreshold = 5000;

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class OperatorKind { Laplacian, RandomWalk, NormalizedAdjacency };

/// An n x n operator derived from a weighted graph. Storage is sparse;
/// dense() materializes on request subject to a node threshold.
class OperatorMatrix {
 public:
  OperatorMatrix(OperatorKind kind, SparseMatrix entries, DegreeVector degrees);

  OperatorKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const SparseMatrix& sparse() const noexcept { return entries_; }
  const DegreeVector& degrees() const noexcept { return degrees_; }
  double coeff(std::size_t i, std::size_t j) const;

  /// Throws DenseLimitExceeded when size() > max_nodes.
  Eigen::MatrixXd dense(std::size_t max_nodes = kDefaultDenseThreshold) const;

 private:
  OperatorKind kind_;
  SparseMatrix entries_;
  DegreeVector degrees_;
};

/// L = D - W. Isolated nodes give zero rows.
OperatorMatrix laplacian(const WeightedGraph& g);

/// P = D^{-1} W. Throws IsolatedNode for any zero-degree node.
OperatorMatrix random_walk(const WeightedGraph& g);

/// D^{-1/2} W D^{-1/2}, the symmetric matrix similar to P.
OperatorMatrix normalized_adjacency(const WeightedGraph& g);

/// One directed flow record: count of migrants between counties i and j.
struct FlowEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t count = 0;
};

/// County-to-county flow counts with county populations. Flows are stored as
/// given (both orientations may appear); migration_similarity checks symmetry.
struct MigrationInput {
  std::size_t n = 0;
  std::vector<FlowEntry> flows;
  std::vector<double> populations;
};

/// Graph with w_ij = M_ij^2 / (P_i P_j). Zero flows produce no edge.
/// Throws AsymmetricFlow, NonpositivePopulation, InvalidArgument (self flow,
/// negative count, out-of-range county, population vector of wrong length).
WeightedGraph migration_similarity(const MigrationInput& m);

}  // namespace eigloc
