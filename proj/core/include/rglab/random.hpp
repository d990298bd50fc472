#pragma once

#include <cstdint>
#include <random>

namespace rglab {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of the stream for trial `index` under `master`:
// splitmix64(master ^ splitmix64(index + 1)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

// mt19937_64 with a platform-independent bounded draw. The standard
// distributions are implementation-defined, so they are not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound > 0. Rejection on the top of the range.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  int between(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rglab
