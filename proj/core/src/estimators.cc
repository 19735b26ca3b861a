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

#include "borel_eb/estimators.h"

#include <cmath>
#include <string>
#include <utility>

#include "borel_eb/errors.h"

namespace borel_eb {

namespace {

std::int64_t Total(const FrequencyTable::Counts& counts) {
  std::int64_t total = 0;
  for (const auto& [key, count] : counts) {
    if (count < 0) throw DomainError("negative frequency count");
    total += count;
  }
  return total;
}

// Indicator of ln(tau) in (0, gamma), i.e. tau in (1, e^gamma).
bool InsideOpenInterval(double log_tau, int gamma) {
  return log_tau > 0.0 && log_tau < static_cast<double>(gamma);
}

void CheckObservation(int r, std::int64_t x) {
  if (r < 1) throw DomainError("r must be >= 1");
  if (x < r) {
    throw DomainError("observation x = " + std::to_string(x) +
                      " is below r = " + std::to_string(r));
  }
}

void CheckGamma(int gamma) {
  if (gamma < 1) throw DomainError("gamma must be a positive integer");
}

double Lookup(const MarginalEstimates::Values& values, std::int64_t key) {
  const auto it = values.find(key);
  return it == values.end() ? 0.0 : it->second;
}

}  // namespace

FrequencyTable::FrequencyTable(int r, int gamma, Counts counts_r,
                               Counts counts_sum)
    : r_(r),
      gamma_(gamma),
      counts_r_(std::move(counts_r)),
      counts_sum_(std::move(counts_sum)) {
  if (r < 1) throw DomainError("r must be >= 1");
  CheckGamma(gamma);
  // Zero counts carry no information; drop them so map sizes mean support.
  std::erase_if(counts_r_, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(counts_sum_, [](const auto& kv) { return kv.second == 0; });
  n_ = Total(counts_r_);
  if (Total(counts_sum_) != n_) {
    throw DomainError("counts_r and counts_sum must total the same n");
  }
  if (!counts_r_.empty() && counts_r_.begin()->first < r) {
    throw DomainError("counts_r has a key below r");
  }
  if (!counts_sum_.empty() && counts_sum_.begin()->first < r + gamma) {
    throw DomainError("counts_sum has a key below r + gamma");
  }
}

std::int64_t FrequencyTable::CountR(std::int64_t x) const {
  const auto it = counts_r_.find(x);
  return it == counts_r_.end() ? 0 : it->second;
}

std::int64_t FrequencyTable::CountSum(std::int64_t y) const {
  const auto it = counts_sum_.find(y);
  return it == counts_sum_.end() ? 0 : it->second;
}

MarginalEstimates::MarginalEstimates(Values m_r, Values m_sum, std::int64_t n)
    : m_r_(std::move(m_r)), m_sum_(std::move(m_sum)), n_(n) {
  for (const auto* values : {&m_r_, &m_sum_}) {
    for (const auto& [key, v] : *values) {
      if (!(v >= 0.0)) throw DomainError("marginal estimates must be >= 0");
    }
  }
}

double MarginalEstimates::MR(std::int64_t x) const { return Lookup(m_r_, x); }

double MarginalEstimates::MSum(std::int64_t y) const {
  return Lookup(m_sum_, y);
}

MarginalEstimates EstimateMarginals(const FrequencyTable& freq,
                                    std::int64_t present_x) {
  CheckObservation(freq.r(), present_x);
  const double denom = static_cast<double>(freq.n() + 1);
  MarginalEstimates::Values m_r;
  MarginalEstimates::Values m_sum;
  for (const auto& [x, count] : freq.counts_r()) {
    m_r[x] = static_cast<double>(count) / denom;
  }
  m_r[present_x] = static_cast<double>(freq.CountR(present_x) + 1) / denom;
  for (const auto& [y, count] : freq.counts_sum()) {
    m_sum[y] = static_cast<double>(count) / denom;
  }
  return MarginalEstimates(std::move(m_r), std::move(m_sum), freq.n());
}

MarginalEstimates ExactMarginals(const UniformPrior& prior, int r, int gamma,
                                 std::int64_t x_max,
                                 const QuadratureSpec& quad) {
  CheckObservation(r, x_max);
  CheckGamma(gamma);
  MarginalEstimates::Values m_r;
  MarginalEstimates::Values m_sum;
  for (std::int64_t x = r; x <= x_max; ++x) {
    m_r[x] = Marginal(prior, r, x, quad);
    m_sum[x + gamma] = Marginal(prior, r + gamma, x + gamma, quad);
  }
  return MarginalEstimates(std::move(m_r), std::move(m_sum), 0);
}

double LogTauPrefactor(int r, int gamma, std::int64_t x) {
  CheckObservation(r, x);
  // ln(r+gamma) - ln(r) and ln(x+gamma) - ln(x) share their rounding at
  // x = r, where the exponent is -1 and the prefactor is exactly 1.
  const double log_ratio_r = std::log(static_cast<double>(r + gamma)) -
                             std::log(static_cast<double>(r));
  const double log_ratio_x =
      std::log(static_cast<double>(x + gamma)) -
      std::log(static_cast<double>(x));
  return log_ratio_r + static_cast<double>(x - r - 1) * log_ratio_x;
}

double Mle(int r, std::int64_t x) {
  CheckObservation(r, x);
  return static_cast<double>(x - r) / static_cast<double>(x);
}

double BayesLinex(const UniformPrior& prior, int r, int gamma, std::int64_t x,
                  const QuadratureSpec& quad) {
  CheckGamma(gamma);
  return -std::log(PosteriorExpNeg(prior, r, gamma, x, quad)) / gamma;
}

double TauG(const UniformPrior& prior, int r, int gamma, std::int64_t x,
            const QuadratureSpec& quad) {
  CheckGamma(gamma);
  return std::exp(LogTauPrefactor(r, gamma, x) +
                  LogMarginal(prior, r, x, quad) -
                  LogMarginal(prior, r + gamma, x + gamma, quad));
}

double NpebLinex(const MarginalEstimates& marg, int r, int gamma,
                 std::int64_t x) {
  CheckObservation(r, x);
  CheckGamma(gamma);
  const double m_x = marg.MR(x);
  if (!(m_x > 0.0)) {
    throw DomainError("m_r(x) must be positive at the present observation");
  }
  const double m_next = marg.MSum(x + gamma);
  if (m_next == 0.0) return Mle(r, x);
  const double log_tau =
      LogTauPrefactor(r, gamma, x) + std::log(m_x) - std::log(m_next);
  return InsideOpenInterval(log_tau, gamma) ? log_tau / gamma : Mle(r, x);
}

double NpebFreq(const FrequencyTable& freq, std::int64_t x) {
  const int r = freq.r();
  const int gamma = freq.gamma();
  CheckObservation(r, x);
  const std::int64_t f_next = freq.CountSum(x + gamma);
  const std::int64_t f_x = freq.CountR(x);
  if (f_next == 0 || f_x == 0) return Mle(r, x);
  const double log_tau = LogTauPrefactor(r, gamma, x) +
                         std::log(static_cast<double>(f_x)) -
                         std::log(static_cast<double>(f_next));
  return InsideOpenInterval(log_tau, gamma) ? log_tau / gamma : Mle(r, x);
}

double TauStarG(const UniformPrior& prior, int r, int gamma,
                const TruncationSpec& trunc, std::int64_t x,
                const QuadratureSpec& quad, const TailSumOptions& tail) {
  CheckObservation(r, x);
  CheckGamma(gamma);
  const std::int64_t last = r + trunc.width();
  if (x > last) throw DomainError("x beyond the truncation point r + N");
  if (x < last) return TauG(prior, r, gamma, x, quad);

  // Both sums are taken relative to the first term's magnitude.
  double log_ref = 0.0;
  double num = 0.0;  // sum of m_G(k|r)
  double den = 0.0;  // sum of m_G(k|r) / tau_G(k)
  for (std::int64_t k = last; k < last + tail.max_terms; ++k) {
    const double log_m = LogMarginal(prior, r, k, quad);
    const double log_w = LogMarginal(prior, r + gamma, k + gamma, quad) -
                         LogTauPrefactor(r, gamma, k);
    if (k == last) log_ref = log_m;
    const double term_num = std::exp(log_m - log_ref);
    const double term_den = std::exp(log_w - log_ref);
    num += term_num;
    den += term_den;
    if (term_num < tail.rel_tol * num && term_den < tail.rel_tol * den) break;
  }
  return num / den;
}

double NpebTruncated(const MarginalEstimates& marg, int r, int gamma,
                     const TruncationSpec& trunc, std::int64_t x) {
  CheckObservation(r, x);
  CheckGamma(gamma);
  const std::int64_t last = r + trunc.width();
  if (x > last) throw DomainError("x beyond the truncation point r + N");
  if (x < last) return NpebLinex(marg, r, gamma, x);

  double num = 0.0;
  double den = 0.0;
  for (auto it = marg.m_r().lower_bound(last); it != marg.m_r().end(); ++it) {
    const auto [k, m_k] = *it;
    if (m_k <= 0.0) continue;
    num += m_k;
    den += marg.MSum(k + gamma) * std::exp(-LogTauPrefactor(r, gamma, k));
  }
  if (num == 0.0 || den == 0.0) return Mle(r, x);
  const double log_tau = std::log(num) - std::log(den);
  return InsideOpenInterval(log_tau, gamma) ? log_tau / gamma : Mle(r, x);
}

double NpebSqError(const MarginalEstimates& marg, int r, std::int64_t x) {
  CheckObservation(r, x);
  const double m_x = marg.MR(x);
  if (!(m_x > 0.0)) {
    throw DomainError("m_r(x) must be positive at the present observation");
  }
  const double log_a_x = LogCoeffA(r, x);
  double kappa = 0.0;
  for (auto it = marg.m_r().upper_bound(x); it != marg.m_r().end(); ++it) {
    const auto [y, m_y] = *it;
    if (m_y <= 0.0) continue;
    const double j = static_cast<double>(y - x - 1);
    const double log_term = (j - 1.0) * std::log(j + 1.0) -
                            std::lgamma(j + 1.0) + std::log(m_y) -
                            LogCoeffA(r, y) + log_a_x - std::log(m_x);
    kappa += std::exp(log_term);
  }
  return (kappa > 0.0 && kappa < 1.0) ? kappa : Mle(r, x);
}

EstimatorTable::EstimatorTable(int r, std::int64_t x_low,
                               std::vector<double> values)
    : r_(r), x_low_(x_low), values_(std::move(values)) {
  CheckObservation(r, x_low);
  if (values_.empty()) throw DomainError("estimator table is empty");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError("estimator values must lie in [0, 1]");
    }
  }
}

EstimatorTable EstimatorTable::Tabulate(
    int r, std::int64_t x_low, std::int64_t x_high,
    const std::function<double(std::int64_t)>& fn) {
  if (x_high < x_low) throw DomainError("empty estimator range");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(x_high - x_low + 1));
  for (std::int64_t x = x_low; x <= x_high; ++x) values.push_back(fn(x));
  return EstimatorTable(r, x_low, std::move(values));
}

double EstimatorTable::At(std::int64_t x) const {
  if (x < x_low() || x > x_high()) {
    throw DomainError("x = " + std::to_string(x) +
                      " outside the estimator table range");
  }
  return values_[static_cast<std::size_t>(x - x_low_)];
}

}  // namespace borel_eb
