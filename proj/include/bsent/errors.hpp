// Copyright 2026 The bsent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace bsent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched cutoffs, malformed parameters, out-of-range arguments.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Probability weight beyond the photon-number cutoff exceeds the tolerance.
class CutoffError : public Error {
 public:
  CutoffError(const std::string& what, int recommended_n_max)
      : Error(what + " (recommended n_max >= " +
              std::to_string(recommended_n_max) + ")"),
        recommended_n_max_(recommended_n_max) {}

  int recommended_n_max() const noexcept { return recommended_n_max_; }

 private:
  int recommended_n_max_;
};

// Violated state-family invariants: weights, normalization of lambda_N.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Operation undefined for the given input (e.g. Schmidt form of a mixed state).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace bsent
