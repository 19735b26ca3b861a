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

#ifndef BOREL_EB_EB_SIM_H_
#define BOREL_EB_EB_SIM_H_

// Empirical Bayes simulation study. Each replication draws n values
// theta_i from the prior, simulates two branching processes per theta_i
// (started by r and by gamma ancestors), tabulates the frequency table, and
// scores the resulting empirical Bayes rule by its exact regret against the
// Bayes rule over a range of x.
//
// Replication i draws from RandomStream::ForReplicate(seed, i), pair by
// pair (theta_i, X_i(r), X_i(gamma)). The first m pairs of a replication
// therefore do not depend on n, so studies at several n share their
// leading pairs.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "borel_eb/estimators.h"
#include "borel_eb/priors_quadrature.h"
#include "borel_eb/random.h"
#include "borel_eb/risk.h"

namespace borel_eb {

inline constexpr std::uint64_t kDefaultSeed = 1;

// How the empirical rule estimates m_G(x | r) at the present x.
enum class MarginalRule {
  // (1 + f_n(x|r)) / (n+1): the present observation counts as one more
  // draw. Goes through NpebLinex.
  kRelativeFrequency,
  // Raw past count f_n(x|r). Goes through NpebFreq.
  kRawCounts,
};

const char* MarginalRuleName(MarginalRule rule);
MarginalRule ParseMarginalRule(const std::string& name);

struct SimConfig {
  int r = 5;
  int gamma = 3;
  int n = 50;
  int reps = 100;
  UniformPrior prior{0.5, 1.0};
  std::uint64_t seed = kDefaultSeed;
  std::int64_t x_low = 5;
  std::int64_t x_high = 200;
  QuadratureSpec quad;
  MarginalRule rule = MarginalRule::kRelativeFrequency;
  // Threads used by RunReplications; results do not depend on it.
  int workers = 1;

  void Validate() const;
};

struct PairSample {
  std::int64_t x_r = 0;
  std::int64_t x_gamma = 0;
};

struct GeneratedPairs {
  std::vector<PairSample> pairs;
  // Kept for diagnostics; estimators only ever see a FrequencyTable.
  std::vector<double> hidden_theta;
};

GeneratedPairs GeneratePairs(const UniformPrior& prior, int r, int gamma,
                             int n, RandomStream& rng);

FrequencyTable BuildFreqTable(std::span<const PairSample> pairs, int r,
                              int gamma);

// theta_n^f(x) for one present observation x against a past table.
double EmpiricalBayesEstimate(const FrequencyTable& freq, std::int64_t x,
                              MarginalRule rule);

struct ReplicationResult {
  double regret_npeb = 0.0;
  EstimatorTable estimator_table;
  int replicate_index = 0;
};

// `ref` must cover [cfg.x_low, cfg.x_high].
ReplicationResult RunReplication(const SimConfig& cfg, int replicate_index,
                                 const BayesReference& ref);
ReplicationResult RunReplication(const SimConfig& cfg, int replicate_index);

// Replications 0 .. cfg.reps-1, ordered by index.
std::vector<ReplicationResult> RunReplications(const SimConfig& cfg,
                                               const BayesReference& ref);

struct AggregateReport {
  double mean_regret = 0.0;
  double std_of_mean = 0.0;  // sample std of S_i / sqrt(reps)
  double mle_regret = 0.0;
  int n = 0;
  int reps = 0;
  std::pair<std::int64_t, std::int64_t> range;
};

AggregateReport Aggregate(std::span<const ReplicationResult> results,
                          const SimConfig& cfg, const BayesReference& ref);

// Regret of the MLE over [x_low, x_high].
double MleRegret(const BayesReference& ref, std::int64_t x_low,
                 std::int64_t x_high);

struct TableOneRow {
  std::int64_t x = 0;
  double theta_npeb_f = 0.0;
  double theta_u = 0.0;
  double theta_mle = 0.0;
};

// Estimates for x = cfg.x_low .. x_high (5..20 in the standard table) from
// one fresh sample of cfg.n pairs drawn from stream (cfg.seed, 0).
std::vector<TableOneRow> ReproduceTableOne(const SimConfig& cfg,
                                           std::int64_t x_low,
                                           std::int64_t x_high);

struct TableTwoRow {
  int n = 0;
  std::int64_t x_low = 0;
  std::int64_t x_high = 0;
  AggregateReport report;
};

// Rows ordered by n, then by range. cfg.n, cfg.x_low and cfg.x_high are
// overridden per cell.
std::vector<TableTwoRow> ReproduceTableTwo(
    const SimConfig& cfg, std::span<const int> n_values,
    std::span<const std::pair<std::int64_t, std::int64_t>> ranges);

}  // namespace borel_eb

#endif  // BOREL_EB_EB_SIM_H_
