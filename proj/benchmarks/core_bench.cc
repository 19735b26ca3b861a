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

#include <cstdint>

#include "benchmark/benchmark.h"
#include "borel_eb/bt_core.h"
#include "borel_eb/eb_sim.h"
#include "borel_eb/priors_quadrature.h"
#include "borel_eb/random.h"
#include "borel_eb/risk.h"

namespace borel_eb {
namespace {

void BM_LogPmf(benchmark::State& state) {
  const BtParams params(0.7, 5);
  std::int64_t x = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(LogPmf(params, x));
    x = x == 400 ? 5 : x + 1;
  }
}
BENCHMARK(BM_LogPmf);

void BM_GaltonWatsonSample(benchmark::State& state) {
  RandomStream rng(3);
  const double theta = state.range(0) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleTotalProgeny(theta, 5, rng));
  }
}
BENCHMARK(BM_GaltonWatsonSample)->Arg(30)->Arg(70)->Arg(95);

void BM_Marginal(benchmark::State& state) {
  const UniformPrior prior(0.5, 1.0);
  std::int64_t x = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Marginal(prior, 5, x));
    x = x == 200 ? 5 : x + 1;
  }
}
BENCHMARK(BM_Marginal);

void BM_MinBayesRisk(benchmark::State& state) {
  const UniformPrior prior(0.5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MinBayesRisk(prior, 5, LinexSpec(3), 5, 200));
  }
}
BENCHMARK(BM_MinBayesRisk)->Unit(benchmark::kMillisecond);

void BM_Replication(benchmark::State& state) {
  SimConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  const auto ref =
      MakeBayesReference(cfg.prior, cfg.r, LinexSpec(cfg.gamma), 5, 200);
  int index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunReplication(cfg, index++, ref));
  }
}
BENCHMARK(BM_Replication)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace borel_eb

BENCHMARK_MAIN();
