#include "eigloc/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "eigloc/error.hpp"

namespace eigloc {

namespace {

// Magnitudes within this relative distance of the maximum count as ties for
// the sign convention, so rounding noise cannot flip symmetric vectors.
constexpr double kSignTieTolerance = 1e-10;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

SymmetricEigenpairs dense_symmetric_eigs(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::InvalidArgument, "matrix is not square");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "dense symmetric eigensolver did not converge");
  }
  SymmetricEigenpairs out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

SymmetricEigenpairs lanczos_symmetric_eigs(const SparseMatrix& a, std::size_t k,
                                           const SolverOptions& options) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::InvalidArgument, "matrix is not square");
  }
  const auto n = static_cast<std::size_t>(a.rows());
  if (k == 0 || k > n) {
    throw Error(ErrorCode::InvalidArgument,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const std::size_t cap =
      options.lanczos_max_basis == 0 ? n : std::min(n, options.lanczos_max_basis);
  if (cap < k) {
    throw Error(ErrorCode::InvalidArgument, "Lanczos basis cap smaller than k");
  }

  std::mt19937_64 rng(options.lanczos_seed);
  Eigen::MatrixXd basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  double scale = 1.0;

  auto orthogonalize = [&](Eigen::VectorXd& w, std::size_t m) {
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd h = basis.leftCols(idx(m)).transpose() * w;
      w.noalias() -= basis.leftCols(idx(m)) * h;
    }
  };
  // Deterministic start/restart vector orthogonal to the first m columns.
  auto fresh_vector = [&](std::size_t m) {
    Eigen::VectorXd r(idx(n));
    for (int attempt = 0; attempt < 8; ++attempt) {
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        r[i] = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
      }
      orthogonalize(r, m);
      const double norm = r.norm();
      if (norm > 1e-8) return Eigen::VectorXd(r / norm);
    }
    throw Error(ErrorCode::ConvergenceFailure, "Lanczos could not extend its basis");
  };

  std::size_t target = std::min(cap, std::max<std::size_t>(2 * k + 20, 40));
  basis.resize(idx(n), idx(std::min(n, target + 1)));
  basis.col(0) = fresh_vector(0);
  std::size_t m = 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;

  while (true) {
    if (static_cast<std::size_t>(basis.cols()) < std::min(n, target + 1)) {
      basis.conservativeResize(Eigen::NoChange, idx(std::min(n, target + 1)));
    }
    for (; m < target; ++m) {
      Eigen::VectorXd w = a * basis.col(idx(m));
      if (m > 0) w -= beta[m - 1] * basis.col(idx(m - 1));
      const double am = basis.col(idx(m)).dot(w);
      w -= am * basis.col(idx(m));
      orthogonalize(w, m + 1);
      const double bm = w.norm();
      alpha.push_back(am);
      scale = std::max({scale, std::abs(am), bm});
      if (m + 1 == n) {
        beta.push_back(0.0);
      } else if (bm <= 1e-12 * scale) {
        beta.push_back(0.0);
        basis.col(idx(m + 1)) = fresh_vector(m + 1);
      } else {
        beta.push_back(bm);
        basis.col(idx(m + 1)) = w / bm;
      }
    }

    const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), idx(m));
    const Eigen::VectorXd sub =
        Eigen::Map<const Eigen::VectorXd>(beta.data(), idx(m - 1));
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (tri.info() != Eigen::Success) {
      throw Error(ErrorCode::ConvergenceFailure, "tridiagonal eigensolver failed");
    }

    const double tail = std::abs(beta[m - 1]);
    std::optional<std::size_t> unconverged;
    for (std::size_t j = 0; j < k; ++j) {
      const double residual =
          tail * std::abs(tri.eigenvectors()(idx(m - 1), idx(m - 1 - j)));
      if (residual > options.lanczos_tolerance * scale) {
        unconverged = j;
        break;
      }
    }
    if (!unconverged) break;
    if (m >= cap) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "Lanczos pair " + std::to_string(*unconverged) +
                      " unconverged at basis size " + std::to_string(m),
                  *unconverged);
    }
    target = std::min(cap, 2 * target);
  }

  SymmetricEigenpairs out;
  out.values.resize(idx(k));
  out.vectors.resize(idx(n), idx(k));
  for (std::size_t j = 0; j < k; ++j) {
    const Eigen::Index col = idx(m - 1 - j);
    out.values[idx(j)] = tri.eigenvalues()[col];
    out.vectors.col(idx(j)) = basis.leftCols(idx(m)) * tri.eigenvectors().col(col);
    out.vectors.col(idx(j)).normalize();
  }
  return out;
}

Eigenbasis::Eigenbasis(Eigen::VectorXd lambdas, Eigen::MatrixXd vectors,
                       double degeneracy_tolerance)
    : lambdas_(std::move(lambdas)), vectors_(std::move(vectors)) {
  if (lambdas_.size() != vectors_.cols()) {
    throw Error(ErrorCode::SizeMismatch, "eigenvalue and eigenvector counts differ");
  }
  const std::size_t k = count();
  gaps_.resize(k > 0 ? k - 1 : 0);
  for (std::size_t j = 0; j + 1 < k; ++j) gaps_[j] = lambda(j) - lambda(j + 1);
  degenerate_.assign(k, false);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (std::abs(gaps_[j]) < degeneracy_tolerance) {
      degenerate_[j] = true;
      degenerate_[j + 1] = true;
    }
  }
}

std::span<const double> Eigenbasis::vector(std::size_t rank) const {
  if (rank >= count()) {
    throw Error(ErrorCode::InvalidArgument,
                "rank " + std::to_string(rank) + " not in basis of " +
                    std::to_string(count()),
                rank);
  }
  return {vectors_.col(idx(rank)).data(), dimension()};
}

void normalize_sign(std::span<double> v) {
  double largest = 0.0;
  for (double x : v) largest = std::max(largest, std::abs(x));
  if (largest == 0.0) return;
  const double cutoff = largest * (1.0 - kSignTieTolerance);
  for (double x : v) {
    if (std::abs(x) >= cutoff) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

Eigenbasis spectrum_random_walk(const WeightedGraph& g, std::optional<std::size_t> k,
                                const SolverOptions& options) {
  const std::size_t n = g.n();
  const std::size_t want = k.value_or(n);
  if (want == 0 || want > n) {
    throw Error(ErrorCode::InvalidArgument,
                "k=" + std::to_string(want) + " outside [1, " + std::to_string(n) + "]");
  }
  const OperatorMatrix s = normalized_adjacency(g);

  SymmetricEigenpairs pairs;
  if (n <= options.dense_threshold) {
    pairs = dense_symmetric_eigs(s.dense(options.dense_threshold));
    pairs.values.conservativeResize(idx(want));
    pairs.vectors.conservativeResize(Eigen::NoChange, idx(want));
  } else {
    pairs = lanczos_symmetric_eigs(s.sparse(), want, options);
  }

  // x = D^{-1/2} y, rescaled to unit L2.
  Eigen::VectorXd inv_sqrt(idx(n));
  for (std::size_t i = 0; i < n; ++i) inv_sqrt[idx(i)] = 1.0 / std::sqrt(g.degrees()[i]);
  Eigen::MatrixXd x = inv_sqrt.asDiagonal() * pairs.vectors;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    x.col(j).normalize();
    normalize_sign({x.col(j).data(), n});
  }

  const OperatorMatrix p = random_walk(g);
  const double bound = 1e-8 * static_cast<double>(n);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double residual = (p.sparse() * x.col(j) - pairs.values[j] * x.col(j)).norm();
    if (!(residual <= bound)) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "eigenpair " + std::to_string(j) + " residual " +
                      std::to_string(residual) + " exceeds " + std::to_string(bound),
                  static_cast<std::size_t>(j));
    }
  }
  return Eigenbasis(std::move(pairs.values), std::move(x), options.degeneracy_tolerance);
}

std::vector<GeneralizedEigenpair> generalized_laplacian_eigs(const WeightedGraph& g,
                                                             const SolverOptions& options) {
  const Eigenbasis basis = spectrum_random_walk(g, std::nullopt, options);
  const OperatorMatrix l = laplacian(g);
  const Eigen::Map<const Eigen::VectorXd> d(g.degrees().values().data(), idx(g.n()));
  const double bound = 1e-8 * static_cast<double>(g.n()) * g.degrees().max();

  std::vector<GeneralizedEigenpair> out;
  out.reserve(basis.count());
  for (std::size_t j = 0; j < basis.count(); ++j) {
    const double mu = 1.0 - basis.lambda(j);
    Eigen::VectorXd x = basis.vectors().col(idx(j));
    const double residual = (l.sparse() * x - mu * d.cwiseProduct(x)).norm();
    if (!(residual <= bound)) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "generalized pair " + std::to_string(j) + " residual " +
                      std::to_string(residual),
                  j);
    }
    out.push_back({mu, std::move(x)});
  }
  // Descending lambda is ascending mu; a stable sort guards equal values.
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.mu < b.mu; });
  return out;
}

std::vector<double> normalized_square_spectrum(std::span<const double> lambdas) {
  if (lambdas.empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty spectrum");
  }
  double total = 0.0;
  for (double l : lambdas) total += l * l;
  if (total == 0.0) {
    throw Error(ErrorCode::AllZeroSpectrum, "every eigenvalue is zero");
  }
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) out.push_back(l * l / total);
  return out;
}

}  // namespace eigloc
