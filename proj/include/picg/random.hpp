#pragma once

#include <cstdint>
#include <random>

namespace picg {

/// Seedable pseudo-random stream used by every stochastic operation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded integers and unit reals are derived here rather than
/// through the <random> distributions, whose algorithms are
/// implementation-defined, so traces are identical across platforms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Stream for the k-th independent unit of work under a master seed.
  static RandomStream derive(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform01();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to decorrelate user seeds and derived seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed of run `index` under `master_seed` (the value RandomStream::derive uses).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace picg
