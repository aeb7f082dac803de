#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "eigloc/clustering.hpp"
#include "eigloc/eigensolver.hpp"
#include "eigloc/twolevel.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace eigloc {
namespace {

WeightedGraph two_triangles() {
  return WeightedGraph(6, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {3, 5, 1}, {4, 5, 1}});
}

// Weights are multiples of 1/8 when `dyadic`, so every cut and volume sum is
// exact in double arithmetic whatever the summation order.
WeightedGraph random_small(std::mt19937_64& rng, bool dyadic = true) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const std::size_t n = 2 + rng() % 7;
    std::vector<Edge> e;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j)
        if (u(rng) < 0.5)
          e.push_back({i, j, dyadic ? static_cast<double>(1 + rng() % 16) / 8.0 : 0.5 + u(rng)});
    WeightedGraph g(n, std::move(e));
    if (is_connected(g)) return g;
  }
}

Partition from_sides(std::vector<bool> s) { return Partition{std::move(s), std::nullopt}; }

TEST(Conductance, Basics) {
  WeightedGraph g = two_triangles();
  EXPECT_DOUBLE_EQ(*conductance(g, {true, true, true, false, false, false}), 1.0 / 7.0);
  EXPECT_FALSE(conductance(g, std::vector<bool>(6, true)).has_value());
}

TEST(SweepCut, TwoTrianglesBridge) {
  WeightedGraph g = two_triangles();
  Eigenbasis b = spectrum_random_walk(g);
  Partition p = sweep_cut(b.vector(1), g);
  ASSERT_TRUE(p.conductance.has_value());
  EXPECT_DOUBLE_EQ(*p.conductance, 1.0 / 7.0);
  EXPECT_EQ(p.first_side_count(), 3u);
  EXPECT_EQ(p.side[0], p.side[1]);
  EXPECT_EQ(p.side[1], p.side[2]);
  EXPECT_NE(p.side[2], p.side[3]);
}

TEST(SweepCut, SingleEdge) {
  Partition p = sweep_cut(std::vector<double>{0.3, -0.1}, WeightedGraph(2, {{0, 1, 2.0}}));
  EXPECT_DOUBLE_EQ(*p.conductance, 1.0);
}

TEST(SweepCut, ConstantVectorUsesIndexOrder) {
  WeightedGraph g = two_triangles();
  std::vector<double> v(6, 0.4);
  Partition p = sweep_cut(v, g);
  std::vector<NodeId> order{0, 1, 2, 3, 4, 5};
  auto phis = oracle::prefix_conductances(g, order);
  const double best = *std::min_element(phis.begin(), phis.end());
  EXPECT_EQ(*p.conductance, best);
  const auto k = static_cast<std::size_t>(std::find(phis.begin(), phis.end(), best) - phis.begin()) + 1;
  EXPECT_EQ(p.first_side_count(), k);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(p.side[i], i < k);
}

TEST(SweepCut, MatchesExhaustivePrefixes) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  for (int t = 0; t < 200; ++t) {
    WeightedGraph g = random_small(rng);
    std::vector<double> v(g.n());
    for (double& x : v) x = z(rng);
    const auto order = oracle::sweep_order(v);
    auto phis = oracle::prefix_conductances(g, order);
    const auto best = std::min_element(phis.begin(), phis.end());
    Partition p = sweep_cut(v, g);
    EXPECT_EQ(*p.conductance, *best);
    const auto k = static_cast<std::size_t>(best - phis.begin()) + 1;
    std::vector<bool> expected(g.n(), false);
    for (std::size_t t = 0; t < k; ++t) expected[order[t]] = true;
    EXPECT_EQ(p.side, expected);
  }
}

TEST(SweepCut, RealWeightsMatchPrefixesToRounding) {
  std::mt19937_64 rng(18);
  std::normal_distribution<double> z;
  for (int t = 0; t < 200; ++t) {
    WeightedGraph g = random_small(rng, false);
    std::vector<double> v(g.n());
    for (double& x : v) x = z(rng);
    auto phis = oracle::prefix_conductances(g, oracle::sweep_order(v));
    const double best = *std::min_element(phis.begin(), phis.end());
    EXPECT_NEAR(*sweep_cut(v, g).conductance, best, 1e-12 * best);
  }
}

TEST(SweepCut, ScaleInvariant) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  for (int t = 0; t < 50; ++t) {
    WeightedGraph g = random_small(rng);
    std::vector<double> v(g.n()), w(g.n());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = z(rng);
      w[i] = 3.5 * v[i];
    }
    EXPECT_EQ(sweep_cut(v, g).side, sweep_cut(w, g).side);
  }
}

TEST(SweepCut, Errors) {
  WeightedGraph g = two_triangles();
  EXPECT_EIGLOC_ERROR(sweep_cut(std::vector<double>{1, 2}, g), ErrorCode::SizeMismatch);
  EXPECT_EIGLOC_ERROR(sweep_cut(std::vector<double>{1, 2, 3, 4},
                                WeightedGraph(4, {{0, 1, 1}, {2, 3, 1}})),
                      ErrorCode::DisconnectedGraph);
}

TEST(SignCut, Examples) {
  EXPECT_EQ(sign_cut(std::vector<double>{1, -1}).side, (std::vector<bool>{true, false}));
  Partition all = sign_cut(std::vector<double>{1, 2, 3});
  EXPECT_TRUE(all.one_sided());
  EXPECT_FALSE(all.conductance.has_value());
  EXPECT_EQ(sign_cut(std::vector<double>{0.3, -0.2, 0.0}).side,
            (std::vector<bool>{true, false, true}));
  EXPECT_EIGLOC_ERROR(sign_cut(std::vector<double>{0, 0}), ErrorCode::InvalidArgument);
}

TEST(SignCut, NegationIsComplement) {
  std::vector<double> v{0.4, -0.1, 0.7, -0.3};
  std::vector<double> m{-0.4, 0.1, -0.7, 0.3};
  Partition a = sign_cut(v), b = sign_cut(m);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NE(a.side[i], b.side[i]);
  EXPECT_EQ(partition_agreement(a, b), 1.0);
}

TEST(PartitionAgreement, Examples) {
  Partition a = from_sides({true, true, false, false});
  EXPECT_EQ(partition_agreement(a, a), 1.0);
  EXPECT_EQ(partition_agreement(a, from_sides({false, false, true, true})), 1.0);
  EXPECT_EQ(partition_agreement(a, from_sides({true, false, false, false})), 0.75);
  EXPECT_EIGLOC_ERROR(partition_agreement(a, from_sides({true})), ErrorCode::SizeMismatch);
}

TEST(RestrictAndCompare, SelfComparison) {
  WeightedGraph g = two_triangles();
  Eigenbasis b = spectrum_random_walk(g);
  std::vector<NodeId> all{0, 1, 2, 3, 4, 5};
  EXPECT_LE(restrict_and_compare(b.vector(1), all, g).distance, 1e-8);
}

TEST(RestrictAndCompare, BlockEigenvectorOfDisjointCliques) {
  // Clique A = {0..3}, clique B = {4..8}; a vector supported on A built from
  // the clique's own (Jacobi-checked) walk eigenvector.
  std::vector<Edge> e;
  for (NodeId i = 0; i < 4; ++i)
    for (NodeId j = i + 1; j < 4; ++j) e.push_back({i, j, 1.0 + 0.1 * static_cast<double>(i + j)});
  for (NodeId i = 4; i < 9; ++i)
    for (NodeId j = i + 1; j < 9; ++j) e.push_back({i, j, 1.0});
  WeightedGraph g(9, std::move(e));
  std::vector<NodeId> a{0, 1, 2, 3};
  WeightedGraph ga = induced_subgraph(g, a);
  Eigenbasis local = spectrum_random_walk(ga);
  std::vector<double> jac = oracle::walk_spectrum(ga);
  ASSERT_NEAR(local.lambda(1), jac[1], 1e-12);
  std::vector<double> v(9, 0.0);
  for (std::size_t i = 0; i < 4; ++i) v[i] = -local.vector(1)[i];
  EXPECT_LE(restrict_and_compare(v, a, g).distance, 1e-8);
}

TEST(RestrictAndCompare, SignInvariantAndErrors) {
  WeightedGraph g = generate_grid(4, 5);
  Eigenbasis b = spectrum_random_walk(g);
  std::vector<NodeId> sub{0, 1, 2, 5, 6, 7};
  std::vector<double> v(b.vector(3).begin(), b.vector(3).end());
  const double d = restrict_and_compare(v, sub, g).distance;
  for (double& x : v) x = -x;
  EXPECT_EQ(restrict_and_compare(v, sub, g).distance, d);
  EXPECT_EIGLOC_ERROR(restrict_and_compare(v, std::vector<NodeId>{0}, g), ErrorCode::SubsetTooSmall);
  EXPECT_EIGLOC_ERROR(restrict_and_compare(v, std::vector<NodeId>{0, 19}, g),
                      ErrorCode::DisconnectedSubgraph);
  EXPECT_EIGLOC_ERROR(restrict_and_compare(std::vector<double>{1}, sub, g), ErrorCode::SizeMismatch);
}

IPRCurve curve_from(const std::vector<double>& iprs) {
  IPRCurve c;
  c.n = 500;
  for (std::size_t r = 0; r < iprs.size(); ++r) c.entries.push_back({r, 0.0, iprs[r], false});
  return c;
}

TEST(DetectTransition, FlatCurve) {
  TransitionReport r = detect_transition(curve_from(std::vector<double>(60, 1.0 / 500)));
  EXPECT_FALSE(r.rank.has_value());
  EXPECT_DOUBLE_EQ(r.observed_factor, 1.0);
}

TEST(DetectTransition, SyntheticStep) {
  std::vector<double> iprs(80, 0.5);
  for (std::size_t r = 0; r <= 40; ++r) iprs[r] = 1.0 / 500;
  TransitionReport r = detect_transition(curve_from(iprs));
  ASSERT_TRUE(r.rank.has_value());
  EXPECT_EQ(*r.rank, 41u);
  EXPECT_DOUBLE_EQ(r.baseline, 1.0 / 500);
  EXPECT_DOUBLE_EQ(r.observed_factor, 250.0);

  TransitionReport wide = detect_transition(curve_from(iprs), 10, 5.0);
  EXPECT_EQ(wide.rank, std::optional<std::size_t>(41));
}

TEST(DetectTransition, TrivialRankIgnoredAndWindowRespected) {
  // Rank 0 is huge and must not enter the baseline; rank 2 jumps but lies
  // inside the window.
  std::vector<double> iprs{1.0, 0.01, 0.2, 0.01, 0.01, 0.01, 0.2};
  TransitionReport r = detect_transition(curve_from(iprs), 3, 2.5);
  ASSERT_TRUE(r.rank.has_value());
  EXPECT_EQ(*r.rank, 6u);
}

TEST(DetectTransition, Errors) {
  EXPECT_EIGLOC_ERROR(detect_transition(curve_from({0.1, 0.1, 0.1}), 3, 2.5), ErrorCode::CurveTooShort);
  EXPECT_EIGLOC_ERROR(detect_transition(curve_from(std::vector<double>(20, 0.1)), 3, 0.0),
                      ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace eigloc
