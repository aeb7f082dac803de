#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eigloc/eigensolver.hpp"
#include "eigloc/graph.hpp"

namespace eigloc {

/// Inputs to ipr/csl/mass_concentration must satisfy | ||v||^2 - 1 | <= this.
inline constexpr double kUnitNormTolerance = 1e-6;

/// Default number of histogram bins.
inline constexpr std::size_t kDefaultBins = 50;

/// Inverse participation ratio sum v_i^4 / sum v_i^2 of a unit vector.
/// 1/n when fully spread, 1 when supported on a single node.
/// Throws NotNormalized.
double ipr(std::span<const double> v);

/// Per-node leverage v_i^2 / sum v^2 along one eigendirection.
struct CSLVector {
  std::vector<double> scores;
  std::size_t rank = 0;
};

/// Throws NotNormalized.
CSLVector csl(std::span<const double> v, std::size_t rank = 0);

struct IPRPoint {
  std::size_t rank;
  double lambda;
  double ipr;
  bool degenerate;
};

struct IPRCurve {
  std::vector<IPRPoint> entries;
  std::size_t n = 0;
};

IPRCurve ipr_curve(const Eigenbasis& basis);

struct MassFractions {
  double l2;
  double l1;
};

/// Fraction of squared (l2) and absolute (l1) mass of v on `subset`.
/// Throws EmptySubset, InvalidArgument (out-of-range node).
MassFractions mass_concentration(std::span<const double> v,
                                 std::span<const NodeId> subset);

struct Histogram {
  std::vector<double> bin_edges;           // nbins + 1, strictly ascending
  std::vector<std::size_t> counts;         // nbins
};

/// Uniform bins over [min v, max v], last bin closed on the right. A constant
/// vector gets a range widened to 1e-12 (relative for large magnitudes).
/// Throws InvalidArgument for nbins == 0 or empty v.
Histogram histogram(std::span<const double> v, std::size_t nbins = kDefaultBins);

}  // namespace eigloc
