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

#ifndef BOREL_EB_ESTIMATORS_H_
#define BOREL_EB_ESTIMATORS_H_

// Point estimators of theta from a Borel-Tanner observation x:
//
//   Mle           (x - r) / x
//   BayesLinex    Bayes rule under LINEX loss for a known uniform prior
//   NpebLinex     empirical Bayes rule with estimated marginals
//   NpebFreq      the same rule driven directly by raw frequency counts
//   NpebTruncated empirical Bayes rule for the distribution truncated at r+N
//   NpebSqError   empirical Bayes rule under squared-error loss
//
// The LINEX Bayes rule depends on the prior only through the marginals:
//
//   theta_G(x) = ln(tau_G(x)) / gamma,
//   tau_G(x)   = (r+gamma)/r * ((x+gamma)/x)^(x-r-1)
//                * m_G(x | r) / m_G(x+gamma | r+gamma).
//
// Every empirical rule falls back to the MLE whenever its plug-in ratio
// leaves the open interval (1, e^gamma) ((0, 1) for squared error).

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "borel_eb/bt_core.h"
#include "borel_eb/priors_quadrature.h"

namespace borel_eb {

// Counts from n past pairs (X_i(r), X_i(gamma)): how often X_i(r) = x and
// how often X_i(r) + X_i(gamma) = y. Carries no information about theta_i.
class FrequencyTable {
 public:
  using Counts = std::map<std::int64_t, std::int64_t>;

  // Throws DomainError if the invariants fail: both count maps total n,
  // keys of counts_r are >= r and keys of counts_sum are >= r + gamma.
  FrequencyTable(int r, int gamma, Counts counts_r, Counts counts_sum);

  int r() const { return r_; }
  int gamma() const { return gamma_; }
  std::int64_t n() const { return n_; }
  const Counts& counts_r() const { return counts_r_; }
  const Counts& counts_sum() const { return counts_sum_; }

  std::int64_t CountR(std::int64_t x) const;
  std::int64_t CountSum(std::int64_t y) const;

 private:
  int r_;
  int gamma_;
  std::int64_t n_ = 0;
  Counts counts_r_;
  Counts counts_sum_;
};

// Estimates of m_G(. | r) and m_G(. | r + gamma) on a finite support; zero
// elsewhere.
class MarginalEstimates {
 public:
  using Values = std::map<std::int64_t, double>;

  MarginalEstimates(Values m_r, Values m_sum, std::int64_t n);

  double MR(std::int64_t x) const;
  double MSum(std::int64_t y) const;
  const Values& m_r() const { return m_r_; }
  const Values& m_sum() const { return m_sum_; }
  std::int64_t n() const { return n_; }

 private:
  Values m_r_;
  Values m_sum_;
  std::int64_t n_;
};

// Relative-frequency marginals with the present observation folded in:
// m_r(x) = (f(x|r) + [x == present_x]) / (n+1), m_sum(y) = f(y|r+gamma)/(n+1).
MarginalEstimates EstimateMarginals(const FrequencyTable& freq,
                                    std::int64_t present_x);

// The true marginals of `prior`, tabulated for x in [r, x_max] and
// y in [r+gamma, x_max+gamma].
MarginalEstimates ExactMarginals(const UniformPrior& prior, int r, int gamma,
                                 std::int64_t x_max,
                                 const QuadratureSpec& quad = {});

// ln((r+gamma)/r * ((x+gamma)/x)^(x-r-1)).
double LogTauPrefactor(int r, int gamma, std::int64_t x);

double Mle(int r, std::int64_t x);

double BayesLinex(const UniformPrior& prior, int r, int gamma, std::int64_t x,
                  const QuadratureSpec& quad = {});

double TauG(const UniformPrior& prior, int r, int gamma, std::int64_t x,
            const QuadratureSpec& quad = {});

// Requires marg.MR(x) > 0 (throws DomainError otherwise).
double NpebLinex(const MarginalEstimates& marg, int r, int gamma,
                 std::int64_t x);

double NpebFreq(const FrequencyTable& freq, std::int64_t x);

// Tail series stop when both new terms fall below rel_tol of their sums, or
// after max_terms terms. Priors reaching theta = 1 have ~1/x tails and hit
// the cap; the result is then the truncated sum.
struct TailSumOptions {
  double rel_tol = 1e-14;
  std::int64_t max_terms = 20'000;
};

double TauStarG(const UniformPrior& prior, int r, int gamma,
                const TruncationSpec& trunc, std::int64_t x,
                const QuadratureSpec& quad = {},
                const TailSumOptions& tail = {});

double NpebTruncated(const MarginalEstimates& marg, int r, int gamma,
                     const TruncationSpec& trunc, std::int64_t x);

// Squared-error rule. The series over j is evaluated on the finite support
// of marg.m_r().
double NpebSqError(const MarginalEstimates& marg, int r, std::int64_t x);

// theta-hat tabulated on {x_low, ..., x_high}; the unit consumed by risk
// evaluation. Every value must lie in [0, 1].
class EstimatorTable {
 public:
  EstimatorTable(int r, std::int64_t x_low, std::vector<double> values);

  static EstimatorTable Tabulate(int r, std::int64_t x_low,
                                 std::int64_t x_high,
                                 const std::function<double(std::int64_t)>& fn);

  int r() const { return r_; }
  std::int64_t x_low() const { return x_low_; }
  std::int64_t x_high() const {
    return x_low_ + static_cast<std::int64_t>(values_.size()) - 1;
  }
  const std::vector<double>& values() const { return values_; }
  bool Covers(std::int64_t lo, std::int64_t hi) const {
    return lo >= x_low() && hi <= x_high();
  }
  // Throws DomainError outside the tabulated range.
  double At(std::int64_t x) const;

 private:
  int r_;
  std::int64_t x_low_;
  std::vector<double> values_;
};

}  // namespace borel_eb

#endif  // BOREL_EB_ESTIMATORS_H_
