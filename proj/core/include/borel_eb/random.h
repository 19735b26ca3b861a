// Copyright 2026 The borel_eb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOREL_EB_RANDOM_H_
#define BOREL_EB_RANDOM_H_

#include <cstdint>
#include <random>

namespace borel_eb {

// SplitMix64 finalizer; used to derive independent stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// A seeded 64-bit Mersenne Twister with a portable uniform generator.
//
// Uniform variates are built from the top 53 bits of each engine output, so
// draws are bit-identical across standard libraries (unlike
// std::uniform_real_distribution, whose algorithm is unspecified).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  // Stream for replicate `index` under master `seed`. Streams for distinct
  // indices are independent of each other and of scheduling order.
  static RandomStream ForReplicate(std::uint64_t seed, std::uint64_t index);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on the half-open interval [0, 1).
  double Uniform();

  // Uniform on the open interval (0, 1).
  double UniformOpen();

  // Uniform on [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace borel_eb

#endif  // BOREL_EB_RANDOM_H_
