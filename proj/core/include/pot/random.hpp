#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pot {

// Counter-based generator: draw k of stream `seed` is
//
//   x = seed + (k + 1) * 0x9E3779B97F4A7C15        (mod 2^64)
//   x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9
//   x = (x ^ (x >> 27)) * 0x94D049BB133111EB
//   x =  x ^ (x >> 31)
//
// i.e. the SplitMix64 output function applied to a Weyl counter. Any draw
// can be recomputed from (seed, k) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t at(std::uint64_t seed, std::uint64_t counter);

  std::uint64_t next_u64() { return at(seed_, counter_++); }
  // Uniform on (0, 1): top 53 bits, offset by half an ulp so 0 is never drawn.
  double uniform();
  // Box-Muller, cosine branch only: two uniforms per normal.
  double normal();
  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Fisher-Yates permutation of [0, n): for k = n-1 down to 1, swap k with
// below(k + 1).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace pot
