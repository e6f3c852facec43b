#include "picg/random.hpp"

#include <limits>
#include <stdexcept>

namespace picg {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix_seed(mix_seed(master_seed) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(mix_seed(seed)) {}

RandomStream RandomStream::derive(std::uint64_t master_seed, std::uint64_t index) {
  return RandomStream(derive_seed(master_seed, index));
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Reject the top partial block so every residue is equally likely.
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % bound;
}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace picg
