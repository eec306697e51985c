// Copyright 2026 The depgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace depgraph {

/// Advances a SplitMix64 state and returns the next output word.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for stream number `stream` derived from `base_seed`.
///
/// Defined as the (stream+1)-th SplitMix64 output of a generator started at
/// `base_seed`. Distinct streams always yield distinct seeds for a fixed
/// base because the mapping is a composition of bijections on 64-bit words.
inline constexpr std::uint64_t derive_seed(std::uint64_t base_seed,
                                           std::uint64_t stream) noexcept {
  std::uint64_t state = base_seed + stream * 0x9E3779B97F4A7C15ULL;
  return splitmix64_next(state);
}

/// xoshiro256** pseudo-random generator (Blackman & Vigna), seeded through
/// SplitMix64. All draw primitives below are defined in terms of exact
/// integer operations, so a given seed produces the same stream on every
/// platform.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), using the top 53 bits of one output word.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Coin flip that fires with probability `p`. Never fires for p = 0 and
  /// always fires for p = 1 (uniform01() < p with uniform01() in [0, 1)).
  bool bernoulli(double p) noexcept { return uniform01() < p; }

  /// Unbiased uniform integer in [0, bound). Rejection sampling on the raw
  /// 64-bit stream; consumes a variable number of words.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: bound is 0");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace depgraph
