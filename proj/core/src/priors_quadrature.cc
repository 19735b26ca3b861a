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

#include "borel_eb/priors_quadrature.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "borel_eb/bt_core.h"
#include "borel_eb/errors.h"

namespace borel_eb {

UniformPrior::UniformPrior(double a, double b) : a_(a), b_(b) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) {
    throw DomainError("uniform prior needs 0 <= a < b <= 1, got (" +
                      std::to_string(a) + ", " + std::to_string(b) + ")");
  }
}

void QuadratureSpec::Validate() const {
  if (node_count < 16) throw DomainError("node_count must be >= 16");
  if (max_passes < 1) throw DomainError("max_passes must be >= 1");
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
}

namespace {

GaussLegendreRule ComputeRule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

struct Pass {
  ScaledIntegral integral;
  double abs_value = 0.0;  // integral of |integrand| on the same scale
};

// Single fixed-order pass.
Pass IntegrateOnce(const std::function<double(double)>& log_weight,
                             const std::function<double(double)>& g,
                             double lo, double hi, int n) {
  const GaussLegendreRule& rule = GetGaussLegendreRule(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  std::vector<double> logs(n);
  double max_log = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    logs[i] = log_weight(mid + half * rule.nodes[i]);
    max_log = std::max(max_log, logs[i]);
  }
  Pass out;
  out.integral.log_scale = max_log;
  double sum = 0.0;
  double abs_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = mid + half * rule.nodes[i];
    double term = rule.weights[i] * std::exp(logs[i] - max_log);
    if (g) term *= g(theta);
    sum += term;
    abs_sum += std::abs(term);
  }
  out.integral.value = sum * half;
  out.abs_value = abs_sum * half;
  return out;
}

}  // namespace

const GaussLegendreRule& GetGaussLegendreRule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(ComputeRule(n));
  return *slot;
}

double ScaledIntegral::Get() const { return value * std::exp(log_scale); }

double ScaledIntegral::Log() const { return std::log(value) + log_scale; }

ScaledIntegral IntegrateScaled(const std::function<double(double)>& log_weight,
                               const std::function<double(double)>& g,
                               double lo, double hi,
                               const QuadratureSpec& spec) {
  spec.Validate();
  int n = spec.node_count;
  ScaledIntegral coarse = IntegrateOnce(log_weight, g, lo, hi, n).integral;
  for (int pass = 0; pass < spec.max_passes; ++pass) {
    n *= 2;
    const Pass fine = IntegrateOnce(log_weight, g, lo, hi, n);
    const ScaledIntegral& f = fine.integral;
    // Compare on the fine estimate's scale. For sign-changing g the
    // tolerance is relative to the integral of |integrand|.
    const double c = coarse.value * std::exp(coarse.log_scale - f.log_scale);
    if (std::abs(f.value - c) <= spec.rel_tol * fine.abs_value) return f;
    if (pass + 1 == spec.max_passes) {
      throw NumericError("quadrature did not converge after " +
                             std::to_string(spec.max_passes) + " passes",
                         c * std::exp(f.log_scale), f.Get());
    }
    coarse = f;
  }
  return coarse;
}

double LogKernelIntegral(const UniformPrior& prior, std::int64_t power,
                         double rate, const QuadratureSpec& spec,
                         const std::function<double(double)>& log_extra) {
  const double k = static_cast<double>(power);
  auto log_weight = [&](double theta) {
    double v = k * std::log(theta) - rate * theta;
    if (log_extra) v += log_extra(theta);
    return v;
  };
  return IntegrateScaled(log_weight, {}, prior.a(), prior.b(), spec).Log();
}

double LogMarginal(const UniformPrior& prior, int r, std::int64_t x,
                   const QuadratureSpec& spec) {
  const double log_a = LogCoeffA(r, x);
  return log_a + std::log(prior.Density()) +
         LogKernelIntegral(prior, x - r, static_cast<double>(x), spec);
}

double Marginal(const UniformPrior& prior, int r, std::int64_t x,
                const QuadratureSpec& spec) {
  return std::exp(LogMarginal(prior, r, x, spec));
}

double PosteriorExpNeg(const UniformPrior& prior, int r, int gamma,
                       std::int64_t x, const QuadratureSpec& spec) {
  LogCoeffA(r, x);  // domain check
  const double xd = static_cast<double>(x);
  const double num = LogKernelIntegral(prior, x - r, xd + gamma, spec);
  const double den = LogKernelIntegral(prior, x - r, xd, spec);
  return std::exp(num - den);
}

double PosteriorMean(const UniformPrior& prior, int r, std::int64_t x,
                     const QuadratureSpec& spec) {
  LogCoeffA(r, x);
  const double xd = static_cast<double>(x);
  const double num = LogKernelIntegral(prior, x - r + 1, xd, spec);
  const double den = LogKernelIntegral(prior, x - r, xd, spec);
  return std::exp(num - den);
}

}  // namespace borel_eb
