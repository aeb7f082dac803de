#include "eigloc/diagnostics.hpp"

#include <algorithm>
#include <string>

#include "eigloc/error.hpp"

namespace eigloc {

namespace {

// Rows for each labeled group; nodes marked kNoGroup belong to no row.
std::vector<GroupMass> group_rows(const Eigenbasis& basis, std::span<const int> labels) {
  std::vector<int> ids;
  for (int g : labels) {
    if (g != kNoGroup) ids.push_back(g);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::vector<std::vector<NodeId>> members(ids.size());
  for (NodeId i = 0; i < labels.size(); ++i) {
    if (labels[i] == kNoGroup) continue;
    const auto pos = std::lower_bound(ids.begin(), ids.end(), labels[i]) - ids.begin();
    members[static_cast<std::size_t>(pos)].push_back(i);
  }

  std::vector<GroupMass> rows;
  rows.reserve(basis.count() * ids.size());
  for (std::size_t j = 0; j < basis.count(); ++j) {
    for (std::size_t g = 0; g < ids.size(); ++g) {
      const MassFractions f = mass_concentration(basis.vector(j), members[g]);
      rows.push_back({j, ids[g], f.l2, f.l1});
    }
  }
  return rows;
}

}  // namespace

std::vector<GroupMass> group_mass_table(const Eigenbasis& basis, std::span<const int> labels) {
  if (labels.size() != basis.dimension()) {
    throw Error(ErrorCode::MissingLabels,
                "have " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(basis.dimension()) + " nodes");
  }
  for (NodeId i = 0; i < labels.size(); ++i) {
    if (labels[i] == kNoGroup) {
      throw Error(ErrorCode::MissingLabels, "node " + std::to_string(i) + " has no label", i);
    }
  }
  return group_rows(basis, labels);
}

AnalysisReport analyze(const WeightedGraph& g, const AnalysisOptions& options) {
  const std::size_t n = g.n();
  const std::size_t k = options.k.value_or(std::min(n, kDefaultAnalysisDepth));
  if (k == 0 || k > n) {
    throw Error(ErrorCode::InvalidArgument,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  for (std::size_t r : options.sweep_ranks) {
    if (r >= k) {
      throw Error(ErrorCode::InvalidArgument,
                  "sweep rank " + std::to_string(r) + " not among the " + std::to_string(k) +
                      " computed eigenvectors",
                  r);
    }
  }

  AnalysisReport report;
  report.n = n;
  report.basis = spectrum_random_walk(g, k, options.solver);
  const Eigenbasis& basis = report.basis;
  report.square_spectrum = normalized_square_spectrum(
      std::span<const double>(basis.lambdas().data(), basis.count()));
  report.curve = ipr_curve(basis);
  if (report.curve.entries.size() >= options.window + 1) {
    report.transition = detect_transition(report.curve, options.window, options.threshold);
  } else {
    report.warnings.push_back("spectrum too short for transition window " +
                              std::to_string(options.window));
  }

  if (g.has_groups()) report.groups = group_rows(basis, g.groups());

  report.records.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto v = basis.vector(j);
    EigenvectorRecord rec{j,
                          basis.lambda(j),
                          report.curve.entries[j].ipr,
                          basis.degenerate(j),
                          histogram(v, options.bins),
                          csl(v, j),
                          std::nullopt};
    for (const GroupMass& row : report.groups) {
      if (row.rank != j) continue;
      if (!rec.top_group || row.l2 > rec.top_group->l2) rec.top_group = row;
    }
    if (rec.degenerate) {
      report.warnings.push_back("rank " + std::to_string(j) +
                                " lies in a degenerate eigenvalue cluster; its localization "
                                "scores depend on the chosen basis");
    }
    report.records.push_back(std::move(rec));
  }

  for (std::size_t r : options.sweep_ranks) {
    report.partitions.push_back({r, sweep_cut(basis.vector(r), g)});
  }
  return report;
}

}  // namespace eigloc
