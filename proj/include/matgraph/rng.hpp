#pragma once

#include <cstdint>

namespace matgraph {

/// Counter-based generator: the i-th draw of stream s under seed k is a pure
/// function of (k, s, i), built from the SplitMix64 finalizer. Sub-streams for
/// parallel replications are derived with `substream`, never shared.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double prob) { return uniform() < prob; }

  /// Standard normal via inverse CDF.
  double normal();

  /// Independent generator keyed by (seed, stream, index).
  Rng substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace matgraph
