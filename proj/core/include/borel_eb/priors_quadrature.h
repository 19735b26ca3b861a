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

#ifndef BOREL_EB_PRIORS_QUADRATURE_H_
#define BOREL_EB_PRIORS_QUADRATURE_H_

// Uniform interval priors on theta and the Gauss-Legendre machinery behind
// every prior/posterior integral.
//
// The integrands of interest are theta^(x-r) exp(-c theta) h(theta) with
// h smooth and positive. For x near 200 these span hundreds of orders of
// magnitude over the prior support, so integrals are returned as logarithms
// and nodes are rescaled by the largest log-integrand before exponentiating.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace borel_eb {

// G = U(a, b) with 0 <= a < b <= 1.
class UniformPrior {
 public:
  UniformPrior(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double Density() const { return 1.0 / (b_ - a_); }

 private:
  double a_;
  double b_;
};

struct QuadratureSpec {
  int node_count = 128;
  // Number of node-count doublings tried before giving up.
  int max_passes = 4;
  double rel_tol = 1e-12;

  // Throws DomainError when node_count < 16 or max_passes < 1.
  void Validate() const;
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point rule computed by Newton iteration on P_n. Rules are cached, so the
// returned reference stays valid for the life of the process.
const GaussLegendreRule& GetGaussLegendreRule(int n);

// A quadrature value of the form exp(log_scale) * value.
struct ScaledIntegral {
  double log_scale = 0.0;
  double value = 0.0;

  double Get() const;
  // ln(value) + log_scale; requires value > 0.
  double Log() const;
};

// Integral over [lo, hi] of g(theta) * exp(log_weight(theta)). `g` may be
// omitted (treated as 1) and may change sign. Refines by doubling node count
// until successive estimates agree to `spec.rel_tol`; throws NumericError
// carrying both estimates if they never do.
ScaledIntegral IntegrateScaled(
    const std::function<double(double)>& log_weight,
    const std::function<double(double)>& g, double lo, double hi,
    const QuadratureSpec& spec);

// ln of the integral over the prior support of theta^(x-r) exp(-c theta)
// times exp(extra(theta)), with respect to d(theta) (not dG).
double LogKernelIntegral(const UniformPrior& prior, std::int64_t power,
                         double rate, const QuadratureSpec& spec,
                         const std::function<double(double)>& log_extra = {});

// Marginal m_G(x | r) = integral of p(x | theta, r) dG(theta).
double Marginal(const UniformPrior& prior, int r, std::int64_t x,
                const QuadratureSpec& spec = {});
double LogMarginal(const UniformPrior& prior, int r, std::int64_t x,
                   const QuadratureSpec& spec = {});

// Posterior expectation E[exp(-gamma theta) | x].
double PosteriorExpNeg(const UniformPrior& prior, int r, int gamma,
                       std::int64_t x, const QuadratureSpec& spec = {});

// Posterior mean E[theta | x].
double PosteriorMean(const UniformPrior& prior, int r, std::int64_t x,
                     const QuadratureSpec& spec = {});

}  // namespace borel_eb

#endif  // BOREL_EB_PRIORS_QUADRATURE_H_
