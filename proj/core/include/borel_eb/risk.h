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

#ifndef BOREL_EB_RISK_H_
#define BOREL_EB_RISK_H_

// LINEX loss and Bayes/regret risk of tabulated estimators.
//
// Three routes to the same numbers are provided so they can check each
// other:
//   BayesRisk          integrates L(theta-hat(x), theta) p(x|theta,r) dG
//                      directly for each x;
//   MinBayesRisk       sum of gamma (E[theta|x] - theta_G(x)) m_G(x|r);
//   RegretViaIdentity  sum of L(theta-hat(x), theta_G(x)) m_G(x|r), which
//                      equals BayesRisk - MinBayesRisk.
// All sums run over x in [x_low, x_high] in ascending order.

#include <cstdint>
#include <vector>

#include "borel_eb/estimators.h"
#include "borel_eb/priors_quadrature.h"

namespace borel_eb {

class LinexSpec {
 public:
  explicit LinexSpec(int gamma);
  int gamma() const { return gamma_; }

 private:
  int gamma_;
};

// exp(gamma d) - gamma d - 1 with d = est - theta. gamma may be any nonzero
// real here; LinexSpec restricts to positive integers.
double LinexLoss(double gamma, double est, double theta);
double LinexLoss(const LinexSpec& spec, double est, double theta);

// Bayes rule, posterior mean and marginal on a range, computed once and
// shared by every risk evaluation against the same prior.
struct BayesReference {
  int r = 0;
  int gamma = 0;
  std::int64_t x_low = 0;
  std::int64_t x_high = 0;
  std::vector<double> theta_g;
  std::vector<double> posterior_mean;
  std::vector<double> marginal;

  std::size_t Index(std::int64_t x) const {
    return static_cast<std::size_t>(x - x_low);
  }
  // Bayes rule as an estimator table.
  EstimatorTable BayesTable() const;
};

BayesReference MakeBayesReference(const UniformPrior& prior, int r,
                                  const LinexSpec& spec, std::int64_t x_low,
                                  std::int64_t x_high,
                                  const QuadratureSpec& quad = {});

double BayesRisk(const UniformPrior& prior, int r, const LinexSpec& spec,
                 const EstimatorTable& est, std::int64_t x_low,
                 std::int64_t x_high, const QuadratureSpec& quad = {});

double MinBayesRisk(const UniformPrior& prior, int r, const LinexSpec& spec,
                    std::int64_t x_low, std::int64_t x_high,
                    const QuadratureSpec& quad = {});
double MinBayesRisk(const BayesReference& ref);

double RegretViaIdentity(const UniformPrior& prior, int r,
                         const LinexSpec& spec, const EstimatorTable& est,
                         std::int64_t x_low, std::int64_t x_high,
                         const QuadratureSpec& quad = {});
// Regret over [x_low, x_high], which must lie inside the reference range.
double RegretViaIdentity(const BayesReference& ref, const EstimatorTable& est,
                         std::int64_t x_low, std::int64_t x_high);

struct RiskReport {
  double risk = 0.0;
  double min_risk = 0.0;
  double regret = 0.0;
  std::int64_t x_low = 0;
  std::int64_t x_high = 0;
  // Marginal probability of x outside [x_low, x_high]; what the truncated
  // sums leave out.
  double tail_mass = 0.0;
};

RiskReport EvaluateRisk(const UniformPrior& prior, int r,
                        const LinexSpec& spec, const EstimatorTable& est,
                        std::int64_t x_low, std::int64_t x_high,
                        const QuadratureSpec& quad = {});

}  // namespace borel_eb

#endif  // BOREL_EB_RISK_H_
