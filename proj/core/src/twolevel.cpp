#include "eigloc/twolevel.hpp"

#include <cmath>
#include <string>

#include "eigloc/error.hpp"
#include "eigloc/rng.hpp"

namespace eigloc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidSpec, what + " = " + std::to_string(p) + " not in [0, 1]");
  }
}

void check_size(std::size_t n, const std::string& what) {
  if (n < 1) throw Error(ErrorCode::InvalidSpec, what + " must be at least 1");
}

void validate_bead(const BeadSpec& bead, std::size_t t) {
  const std::string where = "bead " + std::to_string(t) + ": ";
  std::visit(overloaded{
                 [&](const ErBead& b) {
                   check_size(b.n, where + "n");
                   check_probability(b.p, where + "p");
                 },
                 [&](const TwoModuleBead& b) {
                   check_size(b.n1, where + "n1");
                   check_size(b.n2, where + "n2");
                   check_probability(b.p1, where + "p1");
                   check_probability(b.p2, where + "p2");
                 },
             },
             bead.kind);
  if (bead.label < 0) throw Error(ErrorCode::InvalidSpec, where + "label must be nonnegative");
}

// Appends the bead's internal edges with node ids shifted by `offset`.
void bead_edges(const BeadSpec& bead, std::size_t offset, EdgeStream& stream,
                std::vector<Edge>& out) {
  std::visit(overloaded{
                 [&](const ErBead& b) {
                   for (std::size_t i = 0; i < b.n; ++i) {
                     for (std::size_t j = i + 1; j < b.n; ++j) {
                       if (stream.bernoulli(b.p)) out.push_back({offset + i, offset + j, 1.0});
                     }
                   }
                 },
                 [&](const TwoModuleBead& b) {
                   const std::size_t n = b.n1 + b.n2;
                   for (std::size_t i = 0; i < n; ++i) {
                     for (std::size_t j = i + 1; j < n; ++j) {
                       const bool same = (i < b.n1) == (j < b.n1);
                       if (stream.bernoulli(same ? b.p1 : b.p2)) {
                         out.push_back({offset + i, offset + j, 1.0});
                       }
                     }
                   }
                 },
             },
             bead.kind);
}

void random_bipartite_edges(std::size_t offset_a, std::size_t size_a,
                            std::size_t offset_b, std::size_t size_b, double p,
                            EdgeStream& stream, std::vector<Edge>& out) {
  for (std::size_t i = 0; i < size_a; ++i) {
    for (std::size_t j = 0; j < size_b; ++j) {
      if (stream.bernoulli(p)) out.push_back({offset_a + i, offset_b + j, 1.0});
    }
  }
}

}  // namespace

std::size_t BeadSpec::size() const {
  return std::visit(overloaded{
                        [](const ErBead& b) { return b.n; },
                        [](const TwoModuleBead& b) { return b.n1 + b.n2; },
                    },
                    kind);
}

void validate(const TwoLevelSpec& spec) {
  if (spec.beads.empty()) throw Error(ErrorCode::InvalidSpec, "spec needs at least one bead");
  for (std::size_t t = 0; t < spec.beads.size(); ++t) validate_bead(spec.beads[t], t);
  std::visit(overloaded{
                 [](const PathRandom& i) { check_probability(i.p, "interaction p"); },
                 [](const GlobalRandom& i) { check_probability(i.p, "interaction p"); },
                 [&](const PathIdentity& i) {
                   if (!(i.eps > 0.0) || !std::isfinite(i.eps)) {
                     throw Error(ErrorCode::InvalidSpec, "interaction eps must be positive");
                   }
                   for (std::size_t t = 1; t < spec.beads.size(); ++t) {
                     if (spec.beads[t].size() != spec.beads[0].size()) {
                       throw Error(ErrorCode::UnequalBeadSizes,
                                   "identity coupling needs equal bead sizes; bead " +
                                       std::to_string(t) + " has " +
                                       std::to_string(spec.beads[t].size()) + " nodes, bead 0 has " +
                                       std::to_string(spec.beads[0].size()),
                                   t);
                     }
                   }
                 },
             },
             spec.interaction);
}

std::vector<std::string> spec_warnings(const TwoLevelSpec& spec) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < spec.beads.size(); ++t) {
    if (const auto* b = std::get_if<TwoModuleBead>(&spec.beads[t].kind); b && b->p1 < b->p2) {
      out.push_back("bead " + std::to_string(t) + ": p1 < p2, modules are anti-assortative");
    }
  }
  return out;
}

double matched_er_density(const TwoModuleBead& bead) {
  const auto pairs = [](std::size_t m) {
    return static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  };
  const double total = pairs(bead.n1 + bead.n2);
  if (total == 0.0) return 0.0;
  const double intra = pairs(bead.n1) + pairs(bead.n2);
  const double cross = static_cast<double>(bead.n1) * static_cast<double>(bead.n2);
  return (bead.p1 * intra + bead.p2 * cross) / total;
}

TwoLevelSpec mixed_bead_chain(std::string_view pattern, const TwoModuleBead& module,
                              InteractionSpec interaction, std::uint64_t seed) {
  TwoLevelSpec spec;
  spec.interaction = interaction;
  spec.seed = seed;
  const ErBead er{module.n1 + module.n2, matched_er_density(module)};
  int label = 0;
  for (char c : pattern) {
    if (c == '2') {
      spec.beads.push_back({module, label++});
    } else if (c == 'E' || c == 'e') {
      spec.beads.push_back({er, label++});
    } else {
      throw Error(ErrorCode::InvalidSpec,
                  std::string("bead pattern character '") + c + "' is not 'E' or '2'");
    }
  }
  validate(spec);
  return spec;
}

WeightedGraph generate_er(std::size_t n, double p, std::uint64_t seed) {
  const BeadSpec bead{ErBead{n, p}, 0};
  validate_bead(bead, 0);
  EdgeStream stream(stream_seed(seed, StreamTag::Bead, 0));
  std::vector<Edge> edges;
  bead_edges(bead, 0, stream, edges);
  return WeightedGraph(n, std::move(edges), std::vector<int>(n, 0));
}

WeightedGraph generate_two_module(std::size_t n1, std::size_t n2, double p1,
                                  double p2, std::uint64_t seed) {
  const BeadSpec bead{TwoModuleBead{n1, n2, p1, p2}, 0};
  validate_bead(bead, 0);
  EdgeStream stream(stream_seed(seed, StreamTag::Bead, 0));
  std::vector<Edge> edges;
  bead_edges(bead, 0, stream, edges);
  std::vector<int> module(n1 + n2, 0);
  for (std::size_t i = n1; i < n1 + n2; ++i) module[i] = 1;
  return WeightedGraph(n1 + n2, std::move(edges), module, module);
}

WeightedGraph generate_bead_chain(const TwoLevelSpec& spec) {
  validate(spec);
  const std::size_t beads = spec.beads.size();
  std::vector<std::size_t> offset(beads + 1, 0);
  for (std::size_t t = 0; t < beads; ++t) offset[t + 1] = offset[t] + spec.beads[t].size();
  const std::size_t n = offset[beads];

  std::vector<Edge> edges;
  std::vector<int> groups(n);
  std::vector<int> subgroups(n, kNoGroup);
  for (std::size_t t = 0; t < beads; ++t) {
    const BeadSpec& bead = spec.beads[t];
    EdgeStream stream(stream_seed(spec.seed, StreamTag::Bead, t));
    bead_edges(bead, offset[t], stream, edges);
    for (std::size_t i = offset[t]; i < offset[t + 1]; ++i) {
      groups[i] = bead.label;
    }
    if (const auto* b = std::get_if<TwoModuleBead>(&bead.kind)) {
      for (std::size_t i = 0; i < bead.size(); ++i) {
        subgroups[offset[t] + i] = i < b->n1 ? 0 : 1;
      }
    }
  }

  std::visit(overloaded{
                 [&](const PathRandom& inter) {
                   for (std::size_t t = 0; t + 1 < beads; ++t) {
                     EdgeStream stream(stream_seed(spec.seed, StreamTag::Pair, t, t + 1));
                     random_bipartite_edges(offset[t], spec.beads[t].size(), offset[t + 1],
                                            spec.beads[t + 1].size(), inter.p, stream, edges);
                   }
                 },
                 [&](const GlobalRandom& inter) {
                   for (std::size_t s = 0; s < beads; ++s) {
                     for (std::size_t t = s + 1; t < beads; ++t) {
                       EdgeStream stream(stream_seed(spec.seed, StreamTag::Pair, s, t));
                       random_bipartite_edges(offset[s], spec.beads[s].size(), offset[t],
                                              spec.beads[t].size(), inter.p, stream, edges);
                     }
                   }
                 },
                 [&](const PathIdentity& inter) {
                   for (std::size_t t = 0; t + 1 < beads; ++t) {
                     for (std::size_t i = 0; i < spec.beads[t].size(); ++i) {
                       edges.push_back({offset[t] + i, offset[t + 1] + i, inter.eps});
                     }
                   }
                 },
             },
             spec.interaction);

  return WeightedGraph(n, std::move(edges), std::move(groups), std::move(subgroups));
}

WeightedGraph tensor_block(std::size_t k, const WeightedGraph& w) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "tensor_block needs k >= 1");
  const std::size_t m = w.n();
  std::vector<Edge> edges;
  edges.reserve(k * w.edge_count());
  std::vector<int> groups(k * m);
  std::vector<int> subgroups;
  if (w.has_groups()) subgroups.resize(k * m);
  for (std::size_t c = 0; c < k; ++c) {
    for (const Edge& e : w.edges()) edges.push_back({c * m + e.i, c * m + e.j, e.w});
    for (std::size_t i = 0; i < m; ++i) {
      groups[c * m + i] = static_cast<int>(c);
      if (w.has_groups()) subgroups[c * m + i] = w.groups()[i];
    }
  }
  return WeightedGraph(k * m, std::move(edges), std::move(groups), std::move(subgroups));
}

WeightedGraph generate_grid(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  }
  std::vector<Edge> edges;
  edges.reserve(rows * (cols - 1) + cols * (rows - 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1, 1.0});
      if (r + 1 < rows) edges.push_back({v, v + cols, 1.0});
    }
  }
  return WeightedGraph(rows * cols, std::move(edges));
}

}  // namespace eigloc
