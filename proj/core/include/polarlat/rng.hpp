//  Copyright 2026 The polarlat Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef POLARLAT_RNG_HPP_
#define POLARLAT_RNG_HPP_

#include <cstdint>

namespace polarlat {

// SplitMix64 run as a counter-based generator: output i is
// finalize(key + i * gamma), so a stream is addressed by (seed, stream,
// substream) alone and draws never depend on which worker produced them.
class SplitMixCounterRng {
 public:
  SplitMixCounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
      : key_(mix(mix(seed ^ kSeedTag) ^ mix(stream ^ kStreamTag) ^ mix(substream))) {}

  std::uint64_t next() { return mix(key_ + (++counter_) * kGamma); }

  // Unbiased uniform draw from [0, bound) by rejection on the top bits.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kSeedTag = 0x6A09E667F3BCC908ull;
  static constexpr std::uint64_t kStreamTag = 0xBB67AE8584CAA73Bull;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace polarlat

#endif  // POLARLAT_RNG_HPP_
