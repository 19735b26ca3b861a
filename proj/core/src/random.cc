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

#include "borel_eb/random.h"

namespace borel_eb {

RandomStream::RandomStream(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  engine_.seed(seq);
}

RandomStream RandomStream::ForReplicate(std::uint64_t seed,
                                        std::uint64_t index) {
  return RandomStream(splitmix64(splitmix64(seed) ^ splitmix64(~index)));
}

double RandomStream::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::UniformOpen() {
  for (;;) {
    const double u = Uniform();
    if (u > 0.0) return u;
  }
}

}  // namespace borel_eb
