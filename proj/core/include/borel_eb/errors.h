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

#ifndef BOREL_EB_ERRORS_H_
#define BOREL_EB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace borel_eb {

// Argument outside the support or parameter space of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quadrature failed to settle within the allowed refinement passes. Both the
// last two estimates are kept so callers can judge how far apart they were.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double coarse, double fine)
      : std::runtime_error(what), coarse_(coarse), fine_(fine) {}

  double coarse() const noexcept { return coarse_; }
  double fine() const noexcept { return fine_; }

 private:
  double coarse_;
  double fine_;
};

// A branching process grew past the individual cap before dying out.
class SimulationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace borel_eb

#endif  // BOREL_EB_ERRORS_H_
