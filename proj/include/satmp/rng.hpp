#pragma once

#include <cstdint>
#include <vector>

namespace satmp {

// Deterministic seeded PRNG used everywhere randomness is needed.
//
// Core generator is xoshiro256++ (Blackman/Vigna), state expanded from the
// 64-bit seed with splitmix64. Child generators for independent streams are
// derived by mixing the parent seed with a stream id (see derive()), so a
// single run seed fans out reproducibly. Output is identical across
// platforms; nothing here depends on libstdc++ distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) word = splitmix64(x);
  }

  std::uint64_t seed() const { return seed_; }

  // Independent stream keyed by (seed, stream id).
  Rng derive(std::uint64_t stream) const {
    std::uint64_t x = seed_;
    std::uint64_t a = splitmix64(x);
    return Rng(a ^ (stream * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound), bound >= 1. Lemire's multiply-shift with
  // rejection, unbiased.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      std::uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  std::uint32_t below32(std::uint32_t bound) {
    return static_cast<std::uint32_t>(below(bound));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool coin() { return (next_u64() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace satmp
