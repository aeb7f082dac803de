#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eigloc/graph.hpp"
#include "eigloc/operators.hpp"

namespace eigloc {

/// Eigenvalues closer than this are treated as one degenerate cluster.
inline constexpr double kDegeneracyTolerance = 1e-9;

struct SolverOptions {
  /// Graphs with n above this use Lanczos; at or below, a dense solve.
  std::size_t dense_threshold = kDefaultDenseThreshold;
  double degeneracy_tolerance = kDegeneracyTolerance;
  /// Ritz residual target for Lanczos, relative to the spectral radius (<= 1).
  double lanczos_tolerance = 1e-10;
  /// Cap on the Lanczos basis size; 0 means n.
  std::size_t lanczos_max_basis = 0;
  std::uint64_t lanczos_seed = 0x5eed1a2c705ULL;
};

/// Eigenpairs of a symmetric matrix, eigenvalues descending, orthonormal
/// columns.
struct SymmetricEigenpairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Full dense symmetric decomposition (Householder tridiagonalization
/// followed by implicit QL/QR sweeps).
SymmetricEigenpairs dense_symmetric_eigs(const Eigen::MatrixXd& a);

/// Top-k algebraic eigenpairs of a sparse symmetric matrix by Lanczos with
/// full reorthogonalization. The basis grows until every wanted Ritz pair
/// meets `tolerance` or the basis reaches its cap; invariant subspaces are
/// escaped by restarting from a fresh deterministic vector so repeated
/// eigenvalues of disconnected operators are found. Throws
/// ConvergenceFailure(j) if pair j is still unconverged at the cap.
SymmetricEigenpairs lanczos_symmetric_eigs(const SparseMatrix& a, std::size_t k,
                                           const SolverOptions& options = {});

/// Spectrum of the random-walk operator P = D^{-1}W.
///
/// Columns are unit-L2 eigenvectors of P ordered by descending eigenvalue.
/// Column j is called rank j: rank 0 is the top (trivial, lambda = 1)
/// eigenvector and rank j >= 1 is the j-th nontrivial eigenvector. Each column
/// is sign-normalized so its largest-magnitude entry is positive (lowest index
/// wins among equal magnitudes).
class Eigenbasis {
 public:
  Eigenbasis(Eigen::VectorXd lambdas, Eigen::MatrixXd vectors,
             double degeneracy_tolerance = kDegeneracyTolerance);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(vectors_.rows()); }
  std::size_t count() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }

  const Eigen::VectorXd& lambdas() const noexcept { return lambdas_; }
  double lambda(std::size_t rank) const { return lambdas_[static_cast<Eigen::Index>(rank)]; }
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }
  std::span<const double> vector(std::size_t rank) const;

  /// gaps()[j] = lambda(j) - lambda(j+1).
  const std::vector<double>& gaps() const noexcept { return gaps_; }
  /// True when rank j sits in a cluster of eigenvalues closer than the
  /// degeneracy tolerance; its eigenvector is then basis dependent.
  bool degenerate(std::size_t rank) const { return degenerate_[rank]; }
  const std::vector<bool>& degenerate_flags() const noexcept { return degenerate_; }

 private:
  Eigen::VectorXd lambdas_;
  Eigen::MatrixXd vectors_;
  std::vector<double> gaps_;
  std::vector<bool> degenerate_;
};

/// Flip v in place so its largest-magnitude entry is positive.
void normalize_sign(std::span<double> v);

/// Top-k (default: all) eigenpairs of P via the symmetric similarity
/// transform S = D^{-1/2} W D^{-1/2}. Every returned pair is checked for
/// ||P v - lambda v||_2 <= 1e-8 n. Throws IsolatedNode, InvalidArgument (bad
/// k) or ConvergenceFailure.
Eigenbasis spectrum_random_walk(const WeightedGraph& g,
                                std::optional<std::size_t> k = std::nullopt,
                                const SolverOptions& options = {});

struct GeneralizedEigenpair {
  double mu;
  Eigen::VectorXd x;
};

/// Solutions (1 - lambda, x) of L x = mu D x, ascending in mu, each verified
/// against ||L x - mu D x|| <= 1e-8 n max_degree.
std::vector<GeneralizedEigenpair> generalized_laplacian_eigs(
    const WeightedGraph& g, const SolverOptions& options = {});

/// lambda_i^2 / sum_j lambda_j^2. Throws AllZeroSpectrum or InvalidArgument
/// (empty input).
std::vector<double> normalized_square_spectrum(std::span<const double> lambdas);

}  // namespace eigloc
