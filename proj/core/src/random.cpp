#include "rglab/random.hpp"

#include <limits>

namespace rglab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 1));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // 2^64 mod bound values at the top of the range would bias the residue.
  const std::uint64_t excess = (kMax % bound + 1) % bound;
  const std::uint64_t last_ok = kMax - excess;
  std::uint64_t x = engine_();
  while (x > last_ok) {
    x = engine_();
  }
  return x % bound;
}

int Rng::between(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace rglab
