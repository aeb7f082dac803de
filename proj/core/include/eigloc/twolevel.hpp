#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eigloc/graph.hpp"

namespace eigloc {

/// Erdos-Renyi bead G(n, p).
struct ErBead {
  std::size_t n = 1;
  double p = 0.0;
};

/// Two ER blocks of sizes n1, n2 with intra-block density p1 and cross density p2.
struct TwoModuleBead {
  std::size_t n1 = 1;
  std::size_t n2 = 1;
  double p1 = 0.0;
  double p2 = 0.0;
};

struct BeadSpec {
  std::variant<ErBead, TwoModuleBead> kind;
  int label = 0;

  std::size_t size() const;
  bool is_two_module() const { return std::holds_alternative<TwoModuleBead>(kind); }
};

/// Node pairs in consecutive beads connected independently with probability p.
struct PathRandom {
  double p = 0.0;
};
/// Node i of bead t joined to node i of bead t+1 with weight eps.
struct PathIdentity {
  double eps = 0.0;
};
/// Any two nodes in different beads connected with probability p.
struct GlobalRandom {
  double p = 0.0;
};

using InteractionSpec = std::variant<PathRandom, PathIdentity, GlobalRandom>;

/// The TwoLevel model G = H + N with H = I (x) W: a sequence of base graphs
/// (beads) coupled by an interaction model.
struct TwoLevelSpec {
  std::vector<BeadSpec> beads;
  InteractionSpec interaction = PathRandom{};
  std::uint64_t seed = 0;
};

/// Throws InvalidSpec for out-of-range parameters, UnequalBeadSizes when
/// PathIdentity couples beads of different sizes.
void validate(const TwoLevelSpec& spec);

/// Non-fatal remarks, e.g. a 2-module whose cross density exceeds its
/// intra density.
std::vector<std::string> spec_warnings(const TwoLevelSpec& spec);

/// ER density that matches the expected edge density inside a 2-module:
/// (p1 (C(n1,2) + C(n2,2)) + p2 n1 n2) / C(n1+n2, 2).
double matched_er_density(const TwoModuleBead& bead);

/// Builds a bead chain from a pattern such as "EE2E2": '2' is `module`, 'E' is
/// an ER bead of the same total size with matched_er_density. Bead t gets
/// label t.
TwoLevelSpec mixed_bead_chain(std::string_view pattern, const TwoModuleBead& module,
                              InteractionSpec interaction, std::uint64_t seed);

/// Unit-weight G(n, p). All nodes in group 0.
WeightedGraph generate_er(std::size_t n, double p, std::uint64_t seed);

/// 2-module with nodes [0, n1) in module 0 and [n1, n1+n2) in module 1. Both
/// group and subgroup labels record module membership.
WeightedGraph generate_two_module(std::size_t n1, std::size_t n2, double p1,
                                  double p2, std::uint64_t seed);

/// Beads laid out consecutively; group label = bead label, subgroup = module
/// index inside 2-module beads (kNoGroup for ER beads). Deterministic per
/// seed, and each bead and bead pair draws from its own stream.
WeightedGraph generate_bead_chain(const TwoLevelSpec& spec);

/// k disjoint copies of w (I_k (x) W). Group label = copy index; subgroup
/// carries w's group labels when present.
WeightedGraph tensor_block(std::size_t k, const WeightedGraph& w);

/// rows x cols 4-neighbor lattice with unit weights; node id = r * cols + c.
WeightedGraph generate_grid(std::size_t rows, std::size_t cols);

}  // namespace eigloc
