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

#include "borel_eb/eb_sim.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <thread>

#include "borel_eb/bt_core.h"
#include "borel_eb/errors.h"

namespace borel_eb {

const char* MarginalRuleName(MarginalRule rule) {
  switch (rule) {
    case MarginalRule::kRelativeFrequency:
      return "relfreq";
    case MarginalRule::kRawCounts:
      return "raw";
  }
  return "unknown";
}

MarginalRule ParseMarginalRule(const std::string& name) {
  if (name == "relfreq") return MarginalRule::kRelativeFrequency;
  if (name == "raw") return MarginalRule::kRawCounts;
  throw DomainError("unknown marginal rule '" + name +
                    "' (expected relfreq or raw)");
}

void SimConfig::Validate() const {
  if (r < 1) throw DomainError("r must be >= 1");
  if (gamma < 1) throw DomainError("gamma must be >= 1");
  if (n < 1) throw DomainError("n must be >= 1");
  if (reps < 1) throw DomainError("reps must be >= 1");
  if (x_low < r || x_high < x_low) {
    throw DomainError("range must satisfy r <= x_low <= x_high");
  }
  if (workers < 1) throw DomainError("workers must be >= 1");
  quad.Validate();
}

GeneratedPairs GeneratePairs(const UniformPrior& prior, int r, int gamma,
                             int n, RandomStream& rng) {
  if (n < 1) throw DomainError("n must be >= 1");
  GeneratedPairs out;
  out.pairs.reserve(static_cast<std::size_t>(n));
  out.hidden_theta.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // The interval is open at a so theta stays inside (0, 1) when a = 0.
    double theta = prior.a() + (prior.b() - prior.a()) * rng.UniformOpen();
    theta = std::min(theta, std::nextafter(1.0, 0.0));
    PairSample pair;
    pair.x_r = SampleTotalProgeny(theta, r, rng);
    pair.x_gamma = SampleTotalProgeny(theta, gamma, rng);
    out.pairs.push_back(pair);
    out.hidden_theta.push_back(theta);
  }
  return out;
}

FrequencyTable BuildFreqTable(std::span<const PairSample> pairs, int r,
                              int gamma) {
  if (pairs.empty()) throw DomainError("no pairs to tabulate");
  FrequencyTable::Counts counts_r;
  FrequencyTable::Counts counts_sum;
  for (const PairSample& p : pairs) {
    ++counts_r[p.x_r];
    ++counts_sum[p.x_r + p.x_gamma];
  }
  return FrequencyTable(r, gamma, std::move(counts_r), std::move(counts_sum));
}

double EmpiricalBayesEstimate(const FrequencyTable& freq, std::int64_t x,
                              MarginalRule rule) {
  switch (rule) {
    case MarginalRule::kRelativeFrequency:
      return NpebLinex(EstimateMarginals(freq, x), freq.r(), freq.gamma(), x);
    case MarginalRule::kRawCounts:
      return NpebFreq(freq, x);
  }
  throw DomainError("unknown marginal rule");
}

ReplicationResult RunReplication(const SimConfig& cfg, int replicate_index,
                                 const BayesReference& ref) {
  cfg.Validate();
  RandomStream rng = RandomStream::ForReplicate(
      cfg.seed, static_cast<std::uint64_t>(replicate_index));
  const GeneratedPairs sample =
      GeneratePairs(cfg.prior, cfg.r, cfg.gamma, cfg.n, rng);
  const FrequencyTable freq = BuildFreqTable(sample.pairs, cfg.r, cfg.gamma);
  EstimatorTable table = EstimatorTable::Tabulate(
      cfg.r, cfg.x_low, cfg.x_high, [&](std::int64_t x) {
        return EmpiricalBayesEstimate(freq, x, cfg.rule);
      });
  const double regret =
      RegretViaIdentity(ref, table, cfg.x_low, cfg.x_high);
  return ReplicationResult{regret, std::move(table), replicate_index};
}

ReplicationResult RunReplication(const SimConfig& cfg, int replicate_index) {
  cfg.Validate();
  const BayesReference ref =
      MakeBayesReference(cfg.prior, cfg.r, LinexSpec(cfg.gamma), cfg.x_low,
                         cfg.x_high, cfg.quad);
  return RunReplication(cfg, replicate_index, ref);
}

std::vector<ReplicationResult> RunReplications(const SimConfig& cfg,
                                               const BayesReference& ref) {
  cfg.Validate();
  std::vector<std::optional<ReplicationResult>> slots(
      static_cast<std::size_t>(cfg.reps));
  std::vector<std::exception_ptr> errors(slots.size());
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < cfg.reps; i = next++) {
      try {
        slots[static_cast<std::size_t>(i)] = RunReplication(cfg, i, ref);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int workers = std::min(cfg.workers, cfg.reps);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) threads.emplace_back(work);
  }
  // Report the lowest-index failure so errors are as deterministic as
  // results.
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  std::vector<ReplicationResult> results;
  results.reserve(slots.size());
  for (auto& slot : slots) results.push_back(std::move(*slot));
  return results;
}

double MleRegret(const BayesReference& ref, std::int64_t x_low,
                 std::int64_t x_high) {
  const EstimatorTable mle = EstimatorTable::Tabulate(
      ref.r, x_low, x_high, [&](std::int64_t x) { return Mle(ref.r, x); });
  return RegretViaIdentity(ref, mle, x_low, x_high);
}

AggregateReport Aggregate(std::span<const ReplicationResult> results,
                          const SimConfig& cfg, const BayesReference& ref) {
  if (results.empty()) throw DomainError("nothing to aggregate");
  AggregateReport report;
  report.n = cfg.n;
  report.reps = static_cast<int>(results.size());
  report.range = {cfg.x_low, cfg.x_high};
  double sum = 0.0;
  for (const auto& res : results) sum += res.regret_npeb;
  const double count = static_cast<double>(results.size());
  report.mean_regret = sum / count;
  if (results.size() > 1) {
    double ss = 0.0;
    for (const auto& res : results) {
      const double d = res.regret_npeb - report.mean_regret;
      ss += d * d;
    }
    report.std_of_mean = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  }
  report.mle_regret = MleRegret(ref, cfg.x_low, cfg.x_high);
  return report;
}

std::vector<TableOneRow> ReproduceTableOne(const SimConfig& cfg,
                                           std::int64_t x_low,
                                           std::int64_t x_high) {
  cfg.Validate();
  if (x_low < cfg.r || x_high < x_low) {
    throw DomainError("table range must satisfy r <= x_low <= x_high");
  }
  RandomStream rng = RandomStream::ForReplicate(cfg.seed, 0);
  const GeneratedPairs sample =
      GeneratePairs(cfg.prior, cfg.r, cfg.gamma, cfg.n, rng);
  const FrequencyTable freq = BuildFreqTable(sample.pairs, cfg.r, cfg.gamma);
  std::vector<TableOneRow> rows;
  for (std::int64_t x = x_low; x <= x_high; ++x) {
    TableOneRow row;
    row.x = x;
    row.theta_npeb_f = EmpiricalBayesEstimate(freq, x, cfg.rule);
    row.theta_u = BayesLinex(cfg.prior, cfg.r, cfg.gamma, x, cfg.quad);
    row.theta_mle = Mle(cfg.r, x);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TableTwoRow> ReproduceTableTwo(
    const SimConfig& cfg, std::span<const int> n_values,
    std::span<const std::pair<std::int64_t, std::int64_t>> ranges) {
  cfg.Validate();
  if (n_values.empty() || ranges.empty()) {
    throw DomainError("table two needs at least one n and one range");
  }
  std::int64_t lo = ranges.front().first;
  std::int64_t hi = ranges.front().second;
  for (const auto& [a, b] : ranges) {
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  const BayesReference ref = MakeBayesReference(
      cfg.prior, cfg.r, LinexSpec(cfg.gamma), lo, hi, cfg.quad);
  std::vector<TableTwoRow> rows;
  for (int n : n_values) {
    for (const auto& [a, b] : ranges) {
      SimConfig cell = cfg;
      cell.n = n;
      cell.x_low = a;
      cell.x_high = b;
      const auto results = RunReplications(cell, ref);
      rows.push_back(TableTwoRow{n, a, b, Aggregate(results, cell, ref)});
    }
  }
  return rows;
}

}  // namespace borel_eb
