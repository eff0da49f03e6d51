/*
 * Copyright 2026 The mst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Portable seeded randomness. Every algorithm and constant here is pinned so
// trajectories reproduce bit-for-bit on any platform and in any language:
//
//   splitmix64:   state += 0x9E3779B97F4A7C15, then the mix64 finalizer
//                 z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                 z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                 z ^ (z >> 31)
//   xoshiro256**: state seeded with four consecutive splitmix64 outputs.
//   bounded(r):   Lemire's multiply-shift with the nearly-divisionless
//                 rejection step, uniform on [0, r).
//   shuffle:      Fisher-Yates from the back, j = bounded(i + 1).
//   derive_seed:  mix64(master + 0x9E3779B97F4A7C15 * (index + 1)).

#ifndef MST_RANDOM_HPP
#define MST_RANDOM_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace mst {

inline constexpr std::uint64_t kDefaultSeed = 20140601;
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Per-trial seed; depends only on (master, index), never on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return mix64(master + kGoldenGamma * (index + 1));
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept : s_{} {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
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

  /// Uniform on [0, range). range must be positive.
  std::uint64_t bounded(std::uint64_t range) noexcept {
    unsigned __int128 product =
        static_cast<unsigned __int128>((*this)()) * range;
    auto low = static_cast<std::uint64_t>(product);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        product = static_cast<unsigned __int128>((*this)()) * range;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_;
};

template <typename T>
void shuffle(std::span<T> items, Xoshiro256& rng) noexcept {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Uniformly random permutation of 1..n.
inline std::vector<std::uint64_t> random_permutation(std::size_t n,
                                                     Xoshiro256& rng) {
  std::vector<std::uint64_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i + 1;
  shuffle(std::span<std::uint64_t>(perm), rng);
  return perm;
}

}  // namespace mst

#endif  // MST_RANDOM_HPP
