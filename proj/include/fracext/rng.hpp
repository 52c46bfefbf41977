#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace fracext {

// xoshiro256** seeded through splitmix64. Integer and double conversions are
// defined here rather than via <random> distributions so draws are identical
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [0, n); n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);
  // k distinct indices from [0, n), in draw order (partial Fisher-Yates).
  std::vector<std::uint64_t> sample_indices(std::uint64_t n, std::uint64_t k);

 private:
  std::array<std::uint64_t, 4> s_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace fracext
