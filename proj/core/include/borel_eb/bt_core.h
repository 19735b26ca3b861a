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

#ifndef BOREL_EB_BT_CORE_H_
#define BOREL_EB_BT_CORE_H_

// Borel-Tanner distribution: the law of the total progeny of a Galton-Watson
// process started by r ancestors with Poisson(theta) offspring,
//
//   p(x | theta, r) = a_r(x) theta^(x-r) exp(-theta x),   x = r, r+1, ...
//   a_r(x) = r x^(x-r-1) / (x-r)!
//
// Everything is evaluated in log space; x^(x-r-1) overflows a double near
// x = 150.

#include <cstdint>

#include "borel_eb/random.h"

namespace borel_eb {

// Reproduction parameter and ancestor count. 0 < theta < 1, r >= 1.
class BtParams {
 public:
  BtParams(double theta, int r);

  double theta() const { return theta_; }
  int r() const { return r_; }

 private:
  double theta_;
  int r_;
};

// Truncation width N: the support becomes {r, ..., r+N} and the last atom
// absorbs the whole tail.
class TruncationSpec {
 public:
  explicit TruncationSpec(int width);

  int width() const { return width_; }

 private:
  int width_;
};

// ln a_r(x). Throws DomainError if r < 1 or x < r.
double LogCoeffA(int r, std::int64_t x);

// ln p(x | theta, r). Throws DomainError if x < r.
double LogPmf(const BtParams& params, std::int64_t x);

double Pmf(const BtParams& params, std::int64_t x);

// Pmf of the distribution truncated at r+N. Throws DomainError outside
// {r, ..., r+N}.
double TruncatedPmf(const BtParams& params, const TruncationSpec& trunc,
                    std::int64_t x);

// P(X >= x0) computed as one minus the prefix sum, clamped to [0, 1].
double TailMass(const BtParams& params, std::int64_t x0);

// Mean total progeny r / (1 - theta).
double MeanTotalProgeny(const BtParams& params);

inline constexpr std::int64_t kDefaultProgenyCap = 10'000'000;

// Simulates the branching process generation by generation. Each individual
// of the pending generation draws Poisson(theta) children by the
// exponential-product method; returns the number of individuals ever born.
// Throws SimulationOverflow once the count exceeds `cap`.
std::int64_t SampleTotalProgeny(double theta, int r, RandomStream& rng,
                                std::int64_t cap = kDefaultProgenyCap);

// Inversion of the cumulative distribution, accumulating the pmf on demand.
std::int64_t SampleInverse(const BtParams& params, RandomStream& rng);

// Inversion for a caller-supplied uniform u in [0, 1).
std::int64_t QuantileFromUniform(const BtParams& params, double u);

}  // namespace borel_eb

#endif  // BOREL_EB_BT_CORE_H_
