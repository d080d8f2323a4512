//
// Copyright 2026 The LDPHS Authors
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
//

#ifndef LDPHS_RANDOM_H_
#define LDPHS_RANDOM_H_

#include <cstdint>
#include <limits>
#include <random>

namespace ldphs {

// Default engine for everything that is seeded from a single 64-bit seed.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent-looking seed for stream `index` of `seed`.
constexpr uint64_t DeriveSeed(uint64_t seed, uint64_t index) {
  return Mix64(seed ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

// Small-state generator used for per-user substreams: constructing one per
// user is free, unlike mt19937_64. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

// Uniform double in [0, 1) from the top 53 bits of one draw.
template <typename URBG>
double UniformUnit(URBG& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace ldphs

#endif  // LDPHS_RANDOM_H_
