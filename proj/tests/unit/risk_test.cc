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

#include <cmath>
#include <random>

#include "borel_eb/errors.h"
#include "gtest/gtest.h"

namespace borel_eb {
namespace {

const UniformPrior kPrior(0.5, 1.0);
const LinexSpec kSpec(3);

EstimatorTable MleTable(std::int64_t lo, std::int64_t hi) {
  return EstimatorTable::Tabulate(5, lo, hi,
                                  [](std::int64_t x) { return Mle(5, x); });
}

TEST(LinexLossTest, HandValues) {
  EXPECT_EQ(LinexLoss(kSpec, 0.4, 0.4), 0.0);
  EXPECT_NEAR(LinexLoss(kSpec, 0.6, 0.5), std::exp(0.3) - 0.3 - 1.0, 1e-15);
  EXPECT_NEAR(LinexLoss(kSpec, 0.6, 0.5), 0.049859, 1e-6);
  EXPECT_NEAR(LinexLoss(kSpec, 0.4, 0.5), std::exp(-0.3) + 0.3 - 1.0, 1e-15);
  EXPECT_NEAR(LinexLoss(kSpec, 0.4, 0.5), 0.040818, 1e-6);
  EXPECT_GT(LinexLoss(kSpec, 0.6, 0.5), LinexLoss(kSpec, 0.4, 0.5));
  EXPECT_THROW(LinexSpec(0), DomainError);
}

TEST(LinexLossTest, NonnegativeAndConvex) {
  for (int gamma : {1, 3, 7}) {
    for (double theta = 0.05; theta < 1.0; theta += 0.1) {
      for (double a = 0.0; a <= 1.0; a += 0.05) {
        EXPECT_GE(LinexLoss(gamma, a, theta), 0.0);
        if (std::abs(a - theta) > 1e-9) EXPECT_GT(LinexLoss(gamma, a, theta), 0.0);
        for (double b = a; b <= 1.0; b += 0.05) {
          const double mid = LinexLoss(gamma, 0.5 * (a + b), theta);
          EXPECT_LE(mid, 0.5 * (LinexLoss(gamma, a, theta) +
                                LinexLoss(gamma, b, theta)) + 1e-15);
        }
      }
    }
  }
}

TEST(LinexLossTest, SmallGammaApproachesHalfSquaredError) {
  const double gamma = 0.01;
  for (double d : {-0.8, -0.3, 0.1, 0.5, 0.9}) {
    const double ratio = LinexLoss(gamma, 0.5 + d / 2, 0.5 - d / 2) / (gamma * gamma);
    EXPECT_NEAR(ratio, d * d / 2.0, 0.01 * d * d / 2.0);
  }
}

TEST(MinBayesRiskTest, UniformPriorValue) {
  const double v = MinBayesRisk(kPrior, 5, kSpec, 5, 200);
  EXPECT_NEAR(v, 0.0622, 0.001);
}

TEST(MinBayesRiskTest, AgreesWithDirectBayesRisk) {
  const BayesReference ref = MakeBayesReference(kPrior, 5, kSpec, 5, 200);
  const double direct = BayesRisk(kPrior, 5, kSpec, ref.BayesTable(), 5, 200);
  EXPECT_NEAR(MinBayesRisk(ref), direct, 1e-8);
}

TEST(MinBayesRiskTest, PointMassPriorIsZero) {
  EXPECT_NEAR(MinBayesRisk(UniformPrior(0.6, 0.6 + 1e-7), 5, kSpec, 5, 100),
              0.0, 1e-12);
}

TEST(BayesRiskTest, PointMassWithExactEstimate) {
  const UniformPrior narrow(0.6, 0.6 + 1e-9);
  const EstimatorTable exact = EstimatorTable::Tabulate(
      5, 5, 60, [](std::int64_t) { return 0.6; });
  // theta - 0.6 loses most digits on so narrow an interval.
  QuadratureSpec loose;
  loose.rel_tol = 1e-5;
  EXPECT_NEAR(BayesRisk(narrow, 5, kSpec, exact, 5, 60, loose), 0.0, 1e-15);
  EXPECT_THROW(BayesRisk(narrow, 5, kSpec, exact, 5, 60), NumericError);
}

TEST(BayesRiskTest, BayesRuleValue) {
  const BayesReference ref = MakeBayesReference(kPrior, 5, kSpec, 5, 200);
  EXPECT_NEAR(BayesRisk(kPrior, 5, kSpec, ref.BayesTable(), 5, 200), 0.0622,
              0.001);
}

TEST(BayesRiskTest, RangeAndTableChecks) {
  EXPECT_THROW(BayesRisk(kPrior, 5, kSpec, MleTable(5, 10), 5, 11),
               DomainError);
  EXPECT_THROW(BayesRisk(kPrior, 5, kSpec, MleTable(5, 10), 4, 10),
               DomainError);
  EXPECT_THROW(MinBayesRisk(kPrior, 5, kSpec, 9, 8), DomainError);
}

TEST(RegretTest, BayesRuleHasZeroRegret) {
  const BayesReference ref = MakeBayesReference(kPrior, 5, kSpec, 5, 200);
  EXPECT_EQ(RegretViaIdentity(ref, ref.BayesTable(), 5, 200), 0.0);
}

TEST(RegretTest, MleRegretValues) {
  const double short_range =
      RegretViaIdentity(kPrior, 5, kSpec, MleTable(5, 15), 5, 15);
  const double long_range =
      RegretViaIdentity(kPrior, 5, kSpec, MleTable(5, 200), 5, 200);
  EXPECT_NEAR(short_range, 0.1292, 0.002);
  EXPECT_NEAR(long_range, 0.1327, 0.002);
  EXPECT_LE(short_range, long_range);
}

TEST(RegretTest, IdentityMatchesRiskDifference) {
  const BayesReference ref = MakeBayesReference(kPrior, 5, kSpec, 5, 60);
  const double min_risk = MinBayesRisk(ref);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> values(56);
    for (double& v : values) v = unit(gen);
    const EstimatorTable est(5, 5, values);
    const double risk = BayesRisk(kPrior, 5, kSpec, est, 5, 60);
    EXPECT_NEAR(RegretViaIdentity(ref, est, 5, 60), risk - min_risk, 1e-8);
  }
}

TEST(RegretTest, MonotoneInUpperLimit) {
  const BayesReference ref = MakeBayesReference(kPrior, 5, kSpec, 5, 200);
  const EstimatorTable mle = MleTable(5, 200);
  double prev = 0.0;
  for (std::int64_t hi = 5; hi <= 200; hi += 5) {
    const double s = RegretViaIdentity(ref, mle, 5, hi);
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(EvaluateRiskTest, ReportFields) {
  const RiskReport rep = EvaluateRisk(kPrior, 5, kSpec, MleTable(5, 200), 5, 200);
  EXPECT_EQ(rep.x_low, 5);
  EXPECT_EQ(rep.x_high, 200);
  EXPECT_NEAR(rep.min_risk, 0.0622, 0.001);
  EXPECT_NEAR(rep.regret, 0.1327, 0.002);
  EXPECT_NEAR(rep.regret, rep.risk - rep.min_risk, 1e-12);
  EXPECT_GT(rep.tail_mass, 0.0);
  EXPECT_LT(rep.tail_mass, 0.05);
}

}  // namespace
}  // namespace borel_eb
