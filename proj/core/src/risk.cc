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

#include "borel_eb/risk.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "borel_eb/bt_core.h"
#include "borel_eb/errors.h"

namespace borel_eb {

namespace {

void CheckRange(int r, std::int64_t x_low, std::int64_t x_high) {
  if (x_low < r || x_high < x_low) {
    throw DomainError("risk range must satisfy r <= x_low <= x_high, got [" +
                      std::to_string(x_low) + ", " + std::to_string(x_high) +
                      "]");
  }
}

void CheckTable(const EstimatorTable& est, int r, std::int64_t x_low,
                std::int64_t x_high) {
  if (est.r() != r) throw DomainError("estimator table built for another r");
  if (!est.Covers(x_low, x_high)) {
    throw DomainError("estimator table does not cover the risk range");
  }
}

}  // namespace

LinexSpec::LinexSpec(int gamma) : gamma_(gamma) {
  if (gamma < 1) throw DomainError("LINEX gamma must be a positive integer");
}

double LinexLoss(double gamma, double est, double theta) {
  const double z = gamma * (est - theta);
  // expm1(z) - z cancels badly near zero.
  if (std::abs(z) < 1e-2) {
    return z * z *
           (0.5 + z * (1.0 / 6 + z * (1.0 / 24 + z * (1.0 / 120 + z / 720))));
  }
  return std::expm1(z) - z;
}

double LinexLoss(const LinexSpec& spec, double est, double theta) {
  return LinexLoss(static_cast<double>(spec.gamma()), est, theta);
}

EstimatorTable BayesReference::BayesTable() const {
  return EstimatorTable(r, x_low, theta_g);
}

BayesReference MakeBayesReference(const UniformPrior& prior, int r,
                                  const LinexSpec& spec, std::int64_t x_low,
                                  std::int64_t x_high,
                                  const QuadratureSpec& quad) {
  CheckRange(r, x_low, x_high);
  BayesReference ref;
  ref.r = r;
  ref.gamma = spec.gamma();
  ref.x_low = x_low;
  ref.x_high = x_high;
  for (std::int64_t x = x_low; x <= x_high; ++x) {
    ref.theta_g.push_back(BayesLinex(prior, r, spec.gamma(), x, quad));
    ref.posterior_mean.push_back(PosteriorMean(prior, r, x, quad));
    ref.marginal.push_back(Marginal(prior, r, x, quad));
  }
  return ref;
}

double BayesRisk(const UniformPrior& prior, int r, const LinexSpec& spec,
                 const EstimatorTable& est, std::int64_t x_low,
                 std::int64_t x_high, const QuadratureSpec& quad) {
  CheckRange(r, x_low, x_high);
  CheckTable(est, r, x_low, x_high);
  const double log_density = std::log(prior.Density());
  double total = 0.0;
  for (std::int64_t x = x_low; x <= x_high; ++x) {
    const double k = static_cast<double>(x - r);
    const double xd = static_cast<double>(x);
    const double theta_hat = est.At(x);
    const ScaledIntegral inner = IntegrateScaled(
        [&](double theta) { return k * std::log(theta) - xd * theta; },
        [&](double theta) { return LinexLoss(spec, theta_hat, theta); },
        prior.a(), prior.b(), quad);
    total += inner.value *
             std::exp(inner.log_scale + LogCoeffA(r, x) + log_density);
  }
  return total;
}

double MinBayesRisk(const BayesReference& ref) {
  double total = 0.0;
  for (std::size_t i = 0; i < ref.theta_g.size(); ++i) {
    total += ref.gamma * (ref.posterior_mean[i] - ref.theta_g[i]) *
             ref.marginal[i];
  }
  return total;
}

double MinBayesRisk(const UniformPrior& prior, int r, const LinexSpec& spec,
                    std::int64_t x_low, std::int64_t x_high,
                    const QuadratureSpec& quad) {
  return MinBayesRisk(MakeBayesReference(prior, r, spec, x_low, x_high, quad));
}

double RegretViaIdentity(const BayesReference& ref, const EstimatorTable& est,
                         std::int64_t x_low, std::int64_t x_high) {
  CheckRange(ref.r, x_low, x_high);
  CheckTable(est, ref.r, x_low, x_high);
  if (x_low < ref.x_low || x_high > ref.x_high) {
    throw DomainError("risk range exceeds the Bayes reference range");
  }
  double total = 0.0;
  for (std::int64_t x = x_low; x <= x_high; ++x) {
    const std::size_t i = ref.Index(x);
    total += LinexLoss(static_cast<double>(ref.gamma), est.At(x),
                       ref.theta_g[i]) *
             ref.marginal[i];
  }
  return total;
}

double RegretViaIdentity(const UniformPrior& prior, int r,
                         const LinexSpec& spec, const EstimatorTable& est,
                         std::int64_t x_low, std::int64_t x_high,
                         const QuadratureSpec& quad) {
  CheckTable(est, r, x_low, x_high);
  return RegretViaIdentity(
      MakeBayesReference(prior, r, spec, x_low, x_high, quad), est, x_low,
      x_high);
}

RiskReport EvaluateRisk(const UniformPrior& prior, int r,
                        const LinexSpec& spec, const EstimatorTable& est,
                        std::int64_t x_low, std::int64_t x_high,
                        const QuadratureSpec& quad) {
  const BayesReference ref =
      MakeBayesReference(prior, r, spec, x_low, x_high, quad);
  RiskReport report;
  report.x_low = x_low;
  report.x_high = x_high;
  report.risk = BayesRisk(prior, r, spec, est, x_low, x_high, quad);
  report.min_risk = MinBayesRisk(ref);
  report.regret = std::max(0.0, report.risk - report.min_risk);
  double covered = 0.0;
  for (double m : ref.marginal) covered += m;
  report.tail_mass = std::clamp(1.0 - covered, 0.0, 1.0);
  return report;
}

}  // namespace borel_eb
