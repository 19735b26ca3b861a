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

#ifndef BOREL_EB_TOOLS_CLI_H_
#define BOREL_EB_TOOLS_CLI_H_

// Command-line front end. Subcommands:
//
//   sample     draw Borel-Tanner variates (index,x)
//   estimate   one point estimate (x,estimator,theta_hat)
//   risk       Bayes risk / regret of an estimator over a range
//   reproduce  regenerate the estimate table (one) or regret table (two)
//
// Exit codes: 0 success, 2 domain or flag error, 3 input-file error,
// 4 numeric non-convergence.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "borel_eb/estimators.h"

namespace borel_eb::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInputFile = 3,
  kExitNumeric = 4,
};

class InputFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest round-trip rendering limited to `significant` digits; always
// uses '.' regardless of locale.
std::string FormatDouble(double v, int significant = 6);

// Fixed two-decimal rendering, e.g. 0.63.
std::string FormatTwoDecimals(double v);

// CSV with header `kind,x,count`, kind in {r, sum}. Throws InputFileError
// on malformed content or when the counts violate FrequencyTable
// invariants.
FrequencyTable ReadFrequencyTable(std::istream& in, int r, int gamma);
void WriteFrequencyTable(std::ostream& out, const FrequencyTable& table);

// `key = value` lines; blank lines and `#` comments ignored. Keys are flag
// names without the leading dashes.
std::map<std::string, std::string> ReadConfigFile(const std::string& path);

// Runs the CLI on `args` (without the program name). `env_seed` is the
// value of BOREL_EB_SEED, or null.
int Run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
        const char* env_seed);

}  // namespace borel_eb::cli

#endif  // BOREL_EB_TOOLS_CLI_H_
