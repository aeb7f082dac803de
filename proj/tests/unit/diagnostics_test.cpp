#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "eigloc/diagnostics.hpp"
#include "eigloc/twolevel.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace eigloc {
namespace {

WeightedGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return WeightedGraph(n, std::move(e));
}

TEST(GroupMassTable, IndicatorAndUniform) {
  Eigen::MatrixXd v(4, 2);
  v.col(0) << 0.6, 0.8, 0.0, 0.0;
  v.col(1) << 0.5, 0.5, 0.5, 0.5;
  Eigenbasis b(Eigen::Vector2d(1.0, 0.5), v);
  std::vector<int> labels{0, 0, 1, 1};
  auto rows = group_mass_table(b, labels);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].rank, 0u);
  EXPECT_EQ(rows[0].group, 0);
  EXPECT_NEAR(rows[0].l2, 1.0, 1e-15);
  EXPECT_NEAR(rows[1].l2, 0.0, 1e-15);
  EXPECT_NEAR(rows[2].l2, 0.5, 1e-15);
  EXPECT_NEAR(rows[3].l1, 0.5, 1e-15);
  std::vector<int> partial{0, kNoGroup, 1, 1};
  EXPECT_EIGLOC_ERROR(group_mass_table(b, partial), ErrorCode::MissingLabels);
}

TEST(GroupMassTable, RowsAreStochastic) {
  TwoLevelSpec spec = mixed_bead_chain("E2E", {20, 20, 0.8, 0.2}, PathRandom{0.05}, 4);
  WeightedGraph g = generate_bead_chain(spec);
  auto rows = group_mass_table(spectrum_random_walk(g), g.groups());
  std::map<std::size_t, double> sums;
  for (const GroupMass& r : rows) sums[r.rank] += r.l2;
  EXPECT_EQ(sums.size(), g.n());
  for (const auto& [rank, s] : sums) EXPECT_NEAR(s, 1.0, 1e-10);
}

TEST(Analyze, SingleEdge) {
  AnalysisOptions opts;
  opts.k = 2;
  AnalysisReport r = analyze(WeightedGraph(2, {{0, 1, 1.0}}), opts);
  EXPECT_NEAR(r.basis.lambda(0), 1.0, 1e-14);
  EXPECT_NEAR(r.basis.lambda(1), -1.0, 1e-14);
  EXPECT_NEAR(r.curve.entries[0].ipr, 0.5, 1e-15);
  EXPECT_NEAR(r.curve.entries[1].ipr, 0.5, 1e-15);
  EXPECT_FALSE(r.transition.has_value() && r.transition->rank.has_value());
  EXPECT_EQ(r.records.size(), 2u);
  EXPECT_TRUE(r.partitions.empty());
}

TEST(Analyze, TensorBlockRepeatsSpectrum) {
  AnalysisReport r = analyze(tensor_block(3, complete(4)));
  std::vector<double> base = oracle::walk_spectrum(complete(4));
  ASSERT_EQ(r.basis.count(), 12u);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(r.basis.lambda(i), base[i / 3], 1e-8);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Analyze, DefaultDepthAndSweepRanks) {
  WeightedGraph g = generate_grid(12, 12);
  AnalysisOptions opts;
  opts.sweep_ranks = {1, 2};
  AnalysisReport r = analyze(g, opts);
  EXPECT_EQ(r.basis.count(), kDefaultAnalysisDepth);
  ASSERT_EQ(r.partitions.size(), 2u);
  EXPECT_EQ(r.partitions[1].rank, 2u);
  opts.sweep_ranks = {100};
  EXPECT_EIGLOC_ERROR(analyze(g, opts), ErrorCode::InvalidArgument);
  opts.sweep_ranks = {};
  opts.k = 145;
  EXPECT_EIGLOC_ERROR(analyze(g, opts), ErrorCode::InvalidArgument);
}

TEST(Analyze, PermutationInvariance) {
  TwoLevelSpec spec = mixed_bead_chain("2E2", {15, 15, 0.8, 0.2}, PathRandom{0.05}, 21);
  WeightedGraph g = generate_bead_chain(spec);
  std::vector<NodeId> perm(g.n());
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[3], perm[40]);
  AnalysisReport a = analyze(g);
  AnalysisReport b = analyze(permute_nodes(g, perm));
  ASSERT_EQ(a.curve.entries.size(), b.curve.entries.size());
  for (std::size_t r = 0; r < a.curve.entries.size(); ++r) {
    EXPECT_NEAR(a.basis.lambda(r), b.basis.lambda(r), 1e-12);
    if (!a.basis.degenerate(r)) EXPECT_NEAR(a.curve.entries[r].ipr, b.curve.entries[r].ipr, 1e-9);
  }
  ASSERT_EQ(a.transition.has_value(), b.transition.has_value());
  if (a.transition) EXPECT_EQ(a.transition->rank, b.transition->rank);
}

TEST(Analyze, ChainRecordsTopBead) {
  TwoLevelSpec spec;
  for (int t = 0; t < 5; ++t) spec.beads.push_back({TwoModuleBead{50, 50, 0.8, 0.2}, t});
  spec.interaction = PathRandom{0.05};
  spec.seed = 1;
  AnalysisOptions opts;
  opts.k = 12;
  AnalysisReport r = analyze(generate_bead_chain(spec), opts);
  ASSERT_TRUE(r.records[5].top_group.has_value());
  EXPECT_GE(r.records[5].top_group->l2, 0.8);
}

}  // namespace
}  // namespace eigloc
