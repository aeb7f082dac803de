#include "eigloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigloc/error.hpp"

namespace eigloc {

namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double require_unit(std::span<const double> v) {
  const double s = squared_norm(v);
  if (!(std::abs(s - 1.0) <= kUnitNormTolerance)) {
    throw Error(ErrorCode::NotNormalized,
                "squared norm " + std::to_string(s) + " is not 1");
  }
  return s;
}

}  // namespace

double ipr(std::span<const double> v) {
  const double s = require_unit(v);
  double quartic = 0.0;
  for (double x : v) quartic += (x * x) * (x * x);
  return quartic / s;
}

CSLVector csl(std::span<const double> v, std::size_t rank) {
  const double s = require_unit(v);
  CSLVector out;
  out.rank = rank;
  out.scores.reserve(v.size());
  for (double x : v) out.scores.push_back(x * x / s);
  return out;
}

IPRCurve ipr_curve(const Eigenbasis& basis) {
  IPRCurve curve;
  curve.n = basis.dimension();
  curve.entries.reserve(basis.count());
  for (std::size_t j = 0; j < basis.count(); ++j) {
    curve.entries.push_back(
        {j, basis.lambda(j), ipr(basis.vector(j)), basis.degenerate(j)});
  }
  return curve;
}

MassFractions mass_concentration(std::span<const double> v,
                                 std::span<const NodeId> subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "subset is empty");
  double l2_all = 0.0;
  double l1_all = 0.0;
  for (double x : v) {
    l2_all += x * x;
    l1_all += std::abs(x);
  }
  if (l2_all == 0.0) throw Error(ErrorCode::InvalidArgument, "zero vector");
  double l2 = 0.0;
  double l1 = 0.0;
  for (NodeId i : subset) {
    if (i >= v.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "subset node " + std::to_string(i) + " out of range", i);
    }
    l2 += v[i] * v[i];
    l1 += std::abs(v[i]);
  }
  return {l2 / l2_all, l1 / l1_all};
}

Histogram histogram(std::span<const double> v, std::size_t nbins) {
  if (nbins == 0) throw Error(ErrorCode::InvalidArgument, "nbins must be positive");
  if (v.empty()) throw Error(ErrorCode::InvalidArgument, "empty vector");
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it;
  double hi = *hi_it;
  if (hi == lo) hi = lo + std::max(1e-12, std::abs(lo) * 1e-12);

  Histogram h;
  h.bin_edges.resize(nbins + 1);
  const double width = (hi - lo) / static_cast<double>(nbins);
  for (std::size_t b = 0; b < nbins; ++b) {
    h.bin_edges[b] = lo + width * static_cast<double>(b);
  }
  h.bin_edges[nbins] = hi;
  h.counts.assign(nbins, 0);
  for (double x : v) {
    auto b = static_cast<std::size_t>(std::floor((x - lo) / width));
    ++h.counts[std::min(b, nbins - 1)];
  }
  return h;
}

}  // namespace eigloc
