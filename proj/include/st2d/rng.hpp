// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace st2d {

// Finalizer of the splitmix64 generator, used as a 64-bit mixing function.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic sub-stream seed: identical for a given (seed, index) pair no
// matter how work is scheduled across threads.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ull));
}

// xoshiro256++ (Blackman/Vigna, public domain reference implementation).
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed = 1) {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x += 0x9e3779b97f4a7c15ull;
      w = mix64(x);
    }
  }

  std::uint64_t next() {
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

  // Uniform in (0,1]; never returns 0 so it is safe under log().
  double uniform_pos() { return (double((next() >> 11)) + 1.0) * 0x1.0p-53; }

  // Uniform in [0,1).
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  // Standard complex normal CN(0,1): real and imaginary parts N(0, 1/2).
  void normal_complex(double& re, double& im) {
    const double r = std::sqrt(-std::log(uniform_pos()));
    const double th = 2.0 * std::numbers::pi * uniform();
    re = r * std::cos(th);
    im = r * std::sin(th);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

inline void random_bits(Xoshiro256pp& rng, std::span<std::uint8_t> out) {
  std::uint64_t word = 0;
  int avail = 0;
  for (auto& b : out) {
    if (avail == 0) {
      word = rng.next();
      avail = 64;
    }
    b = std::uint8_t(word & 1u);
    word >>= 1;
    --avail;
  }
}

}  // namespace st2d
