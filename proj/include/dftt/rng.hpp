#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dftt/bitseq.hpp"

namespace dftt {

// MT19937 with the standard parameters. Hand-rolled so the generator state is
// a value type: experiments seed one instance per task index and never share.
class Mt19937 {
 public:
  static constexpr std::size_t kStateSize = 624;
  static constexpr std::uint32_t kDefaultSeed = 5489u;

  explicit Mt19937(std::uint32_t seed_value = kDefaultSeed) { seed(seed_value); }

  void seed(std::uint32_t seed_value) {
    state_[0] = seed_value;
    for (std::size_t i = 1; i < kStateSize; ++i) {
      state_[i] = static_cast<std::uint32_t>(
          1812433253u * (state_[i - 1] ^ (state_[i - 1] >> 30)) + i);
    }
    index_ = kStateSize;
  }

  std::uint32_t next_u32() {
    if (index_ >= kStateSize) {
      regenerate();
    }
    std::uint32_t y = state_[index_++];
    y ^= y >> 11;
    y ^= (y << 7) & 0x9D2C5680u;
    y ^= (y << 15) & 0xEFC60000u;
    y ^= y >> 18;
    return y;
  }

  // Uniform on the open interval (0,1); cannot return 0, so -log of it is a
  // safe exponential draw.
  double next_open01() {
    return (static_cast<double>(next_u32()) + 0.5) * (1.0 / 4294967296.0);
  }

 private:
  void regenerate() {
    constexpr std::uint32_t kUpperMask = 0x80000000u;
    constexpr std::uint32_t kLowerMask = 0x7FFFFFFFu;
    constexpr std::uint32_t kMatrixA = 0x9908B0DFu;
    for (std::size_t i = 0; i < kStateSize; ++i) {
      const std::uint32_t y = (state_[i] & kUpperMask) |
                              (state_[(i + 1) % kStateSize] & kLowerMask);
      state_[i] = state_[(i + 397) % kStateSize] ^ (y >> 1) ^
                  ((y & 1u) ? kMatrixA : 0u);
    }
    index_ = 0;
  }

  std::uint32_t state_[kStateSize];
  std::size_t index_ = kStateSize;
};

// Maps a master seed to per-task seeds: seed_i = master + i (mod 2^32).
// Every parallel experiment derives its generators through this, which is
// what makes results independent of the worker count.
struct SeedPlan {
  std::uint32_t master_seed;

  std::uint32_t seed_for(std::size_t task_index) const noexcept {
    return static_cast<std::uint32_t>(master_seed +
                                      static_cast<std::uint32_t>(task_index));
  }

  Mt19937 generator_for(std::size_t task_index) const {
    return Mt19937(seed_for(task_index));
  }
};

// n bits taken from consecutive outputs, most significant bit of each word
// first; a partial final word is truncated, ordering preserved.
inline BitSequence random_bitsequence(Mt19937& rng, std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("random_bitsequence: n must be positive");
  }
  std::vector<std::uint8_t> bits(n);
  std::size_t k = 0;
  while (k < n) {
    const std::uint32_t word = rng.next_u32();
    for (int b = 31; b >= 0 && k < n; --b, ++k) {
      bits[k] = static_cast<std::uint8_t>((word >> b) & 1u);
    }
  }
  return BitSequence(std::move(bits));
}

}  // namespace dftt
