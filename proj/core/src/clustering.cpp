#include "eigloc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eigloc/error.hpp"

namespace eigloc {

std::size_t Partition::first_side_count() const {
  return static_cast<std::size_t>(std::count(side.begin(), side.end(), true));
}

bool Partition::one_sided() const {
  const std::size_t k = first_side_count();
  return k == 0 || k == side.size();
}

std::optional<double> conductance(const WeightedGraph& g, const std::vector<bool>& side) {
  if (side.size() != g.n()) {
    throw Error(ErrorCode::SizeMismatch, "partition size differs from graph size");
  }
  double cut = 0.0;
  for (const Edge& e : g.edges()) {
    if (side[e.i] != side[e.j]) cut += e.w;
  }
  double vol_in = 0.0;
  double vol_out = 0.0;
  for (NodeId i = 0; i < g.n(); ++i) (side[i] ? vol_in : vol_out) += g.degrees()[i];
  const double denom = std::min(vol_in, vol_out);
  if (denom == 0.0) return std::nullopt;
  return cut / denom;
}

Partition sweep_cut(std::span<const double> v, const WeightedGraph& g) {
  const std::size_t n = g.n();
  if (v.size() != n) throw Error(ErrorCode::SizeMismatch, "vector length differs from n");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sweep cut needs at least two nodes");
  if (!is_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "sweep cut needs a connected graph");

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return v[a] > v[b] || (v[a] == v[b] && a < b);
  });

  const double total = g.degrees().total();
  std::vector<bool> in_prefix(n, false);
  double cut = 0.0;
  double vol = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_size = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const NodeId u = order[k];
    double to_prefix = 0.0;
    for (const Neighbor& nb : g.neighbors(u)) {
      if (in_prefix[nb.node]) to_prefix += nb.w;
    }
    in_prefix[u] = true;
    cut += g.degrees()[u] - 2.0 * to_prefix;
    vol += g.degrees()[u];
    const double phi = cut / std::min(vol, total - vol);
    if (phi < best) {
      best = phi;
      best_size = k + 1;
    }
  }

  Partition out;
  out.side.assign(n, false);
  for (std::size_t k = 0; k < best_size; ++k) out.side[order[k]] = true;
  // Recompute from scratch so the reported value carries no drift from the
  // incremental bookkeeping.
  out.conductance = conductance(g, out.side);
  return out;
}

Partition sign_cut(std::span<const double> v) {
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    throw Error(ErrorCode::InvalidArgument, "sign cut of the zero vector");
  }
  Partition out;
  out.side.reserve(v.size());
  for (double x : v) out.side.push_back(x >= 0.0);
  return out;
}

double partition_agreement(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::SizeMismatch, "partitions have different sizes");
  }
  if (a.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty partitions");
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a.side[i] == b.side[i] ? 1 : 0;
  const double frac = static_cast<double>(same) / static_cast<double>(a.size());
  return std::max(frac, 1.0 - frac);
}

RestrictionComparison restrict_and_compare(std::span<const double> v_full,
                                           std::span<const NodeId> subset,
                                           const WeightedGraph& g,
                                           const SolverOptions& options) {
  if (v_full.size() != g.n()) throw Error(ErrorCode::SizeMismatch, "vector length differs from n");
  if (subset.size() < 2) {
    throw Error(ErrorCode::SubsetTooSmall, "restriction needs at least two nodes");
  }
  WeightedGraph sub = induced_subgraph(g, subset);
  if (!is_connected(sub)) {
    throw Error(ErrorCode::DisconnectedSubgraph, "subset does not induce a connected subgraph");
  }

  const auto m = static_cast<Eigen::Index>(subset.size());
  Eigen::VectorXd restricted(m);
  for (Eigen::Index k = 0; k < m; ++k) restricted[k] = v_full[subset[static_cast<std::size_t>(k)]];
  const double norm = restricted.norm();
  if (norm == 0.0) throw Error(ErrorCode::InvalidArgument, "vector vanishes on the subset");
  restricted /= norm;
  normalize_sign({restricted.data(), subset.size()});

  const Eigenbasis local = spectrum_random_walk(sub, 2, options);
  Eigen::VectorXd fiedler = local.vectors().col(1);

  const double same = (restricted - fiedler).cwiseAbs().maxCoeff();
  const double flipped = (restricted + fiedler).cwiseAbs().maxCoeff();
  return {std::min(same, flipped), std::move(restricted), std::move(fiedler), std::move(sub)};
}

namespace {

double median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

TransitionReport detect_transition(const IPRCurve& curve, std::size_t window, double threshold) {
  if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be positive");
  if (curve.entries.size() < window + 1) {
    throw Error(ErrorCode::CurveTooShort,
                "curve has " + std::to_string(curve.entries.size()) + " ranks, window needs " +
                    std::to_string(window + 1));
  }
  TransitionReport report;
  report.window = window;
  report.threshold = threshold;

  const auto& e = curve.entries;
  double best_ratio = 0.0;
  for (std::size_t j = std::max<std::size_t>(2, window + 1); j < e.size(); ++j) {
    std::vector<double> before;
    before.reserve(j - 1);
    for (std::size_t r = 1; r < j; ++r) before.push_back(e[r].ipr);
    const double base = median(std::move(before));
    const double ratio = e[j].ipr / base;
    if (e[j].ipr >= threshold * base) {
      report.rank = e[j].rank;
      report.baseline = base;
      report.observed_factor = ratio;
      return report;
    }
    best_ratio = std::max(best_ratio, ratio);
  }
  if (e.size() > 1) {
    std::vector<double> all;
    for (std::size_t r = 1; r < e.size(); ++r) all.push_back(e[r].ipr);
    report.baseline = median(std::move(all));
  }
  report.observed_factor = best_ratio;
  return report;
}

}  // namespace eigloc
