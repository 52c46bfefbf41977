#include "fracext/rng.hpp"

#include "fracext/error.hpp"

#include <numeric>

namespace fracext {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t st = seed;
  for (auto& w : s_) w = splitmix64(st);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below(0)");
  const std::uint64_t limit = -n % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t x = next();
    if (x >= limit) return x % n;
  }
}

std::vector<std::uint64_t> Rng::sample_indices(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw InvalidArgument("sample_indices: k > n");
  std::vector<std::uint64_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uint64_t j = i + below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace fracext
