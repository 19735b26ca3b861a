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

#include "borel_eb/bt_core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "borel_eb/errors.h"

namespace borel_eb {

BtParams::BtParams(double theta, int r) : theta_(theta), r_(r) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("theta must lie in (0, 1), got " + std::to_string(theta));
  }
  if (r < 1) {
    throw DomainError("r must be a positive integer, got " + std::to_string(r));
  }
}

TruncationSpec::TruncationSpec(int width) : width_(width) {
  if (width < 1) {
    throw DomainError("truncation width must be >= 1, got " +
                      std::to_string(width));
  }
}

double LogCoeffA(int r, std::int64_t x) {
  if (r < 1) throw DomainError("r must be >= 1");
  if (x < r) {
    throw DomainError("x = " + std::to_string(x) + " is below r = " +
                      std::to_string(r));
  }
  const double xd = static_cast<double>(x);
  const double k = static_cast<double>(x - r);
  return std::log(static_cast<double>(r)) + (k - 1.0) * std::log(xd) -
         std::lgamma(k + 1.0);
}

double LogPmf(const BtParams& params, std::int64_t x) {
  const double k = static_cast<double>(x - params.r());
  return LogCoeffA(params.r(), x) + k * std::log(params.theta()) -
         params.theta() * static_cast<double>(x);
}

double Pmf(const BtParams& params, std::int64_t x) {
  return std::exp(LogPmf(params, x));
}

double TruncatedPmf(const BtParams& params, const TruncationSpec& trunc,
                    std::int64_t x) {
  const std::int64_t last = params.r() + trunc.width();
  if (x < params.r() || x > last) {
    throw DomainError("x = " + std::to_string(x) +
                      " outside the truncated support");
  }
  if (x < last) return Pmf(params, x);
  return TailMass(params, last);
}

double TailMass(const BtParams& params, std::int64_t x0) {
  if (x0 < params.r()) throw DomainError("tail start below r");
  double prefix = 0.0;
  for (std::int64_t x = params.r(); x < x0; ++x) prefix += Pmf(params, x);
  return std::clamp(1.0 - prefix, 0.0, 1.0);
}

double MeanTotalProgeny(const BtParams& params) {
  return params.r() / (1.0 - params.theta());
}

namespace {

// Knuth's product-of-uniforms Poisson sampler; exact for small means.
std::int64_t SamplePoissonSmall(double mean_exp_neg, RandomStream& rng) {
  std::int64_t k = 0;
  double prod = rng.Uniform();
  while (prod >= mean_exp_neg) {
    ++k;
    prod *= rng.Uniform();
  }
  return k;
}

}  // namespace

std::int64_t SampleTotalProgeny(double theta, int r, RandomStream& rng,
                                std::int64_t cap) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must be in (0,1)");
  if (r < 1) throw DomainError("r must be >= 1");
  const double threshold = std::exp(-theta);
  std::int64_t total = r;
  std::int64_t pending = r;
  while (pending > 0) {
    std::int64_t born = 0;
    for (std::int64_t i = 0; i < pending; ++i) {
      born += SamplePoissonSmall(threshold, rng);
    }
    total += born;
    if (total > cap) {
      throw SimulationOverflow("total progeny exceeded cap of " +
                               std::to_string(cap));
    }
    pending = born;
  }
  return total;
}

std::int64_t QuantileFromUniform(const BtParams& params, double u) {
  std::int64_t x = params.r();
  double cdf = Pmf(params, x);
  // The pmf tail is eventually geometric, so cdf reaches any u < 1 unless
  // rounding stalls it; stop once terms no longer move the sum.
  while (cdf <= u) {
    ++x;
    const double p = Pmf(params, x);
    if (cdf + p == cdf && x > MeanTotalProgeny(params)) break;
    cdf += p;
  }
  return x;
}

std::int64_t SampleInverse(const BtParams& params, RandomStream& rng) {
  return QuantileFromUniform(params, rng.Uniform());
}

}  // namespace borel_eb
