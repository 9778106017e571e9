#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace tsq {

// Seedable RNG with derived substreams. Doubles are produced from raw engine
// bits in-house, so sampled sequences are identical across standard library
// implementations. Substreams are independent streams keyed by (seed, index);
// parallel Monte Carlo gives each trial its own substream.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t bits();
  double uniform();  // [0, 1)
  // Samples an index proportionally to the (nonnegative) weights.
  int sample_discrete(std::span<const double> weights);
  RandomSource substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tsq
