#pragma once

#include <cstdint>
#include <random>

namespace eigloc {

/// Random number contract for graph generation.
///
/// Every independent piece of a generated graph draws from its own
/// std::mt19937_64 engine. The engine seed is derived from the user seed and a
/// (tag, a, b) stream key through SplitMix64, so streams never depend on how
/// many other streams exist. Bead t uses (Bead, t, 0); interaction edges
/// between beads s < t use (Pair, s, t). A pair of nodes is connected when a
/// 53-bit uniform draw in [0, 1) is below the edge probability.
enum class StreamTag : std::uint64_t { Bead = 1, Pair = 2 };

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t stream_seed(std::uint64_t seed, StreamTag tag, std::uint64_t a,
                          std::uint64_t b = 0);

class EdgeStream {
 public:
  explicit EdgeStream(std::uint64_t stream_seed) : engine_(stream_seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eigloc
