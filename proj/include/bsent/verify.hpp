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

// Claim-by-claim verification harness. Each claim rebuilds its inputs from a
// fixed seed, runs to completion on its own, and reports a headline metric
// against a pinned threshold together with the individual checks it made.

#include <cstdint>
#include <string>
#include <vector>

#include "bsent/fock.hpp"
#include "bsent/optics.hpp"

namespace bsent {

enum class Bound { at_most, at_least };

struct SubCheck {
  std::string name;
  double metric = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::at_most;
  bool pass = false;
};

struct ClaimResult {
  std::string claim_id;
  std::string anchor;  // the statement being checked, in words
  double metric = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::int64_t runtime_ms = 0;
  std::uint64_t seed = 0;
  std::vector<SubCheck> checks;
  std::string note;
};

struct VerifyConfig {
  std::uint64_t seed = 20260416;
  double fd_step = 1e-3;
  // cutoffs are picked per input as the smallest n_max meeting these
  double pure_leakage_tol = 1e-24;
  int pure_cap = 160;
  double mixed_leakage_tol = 1e-12;
  // mixed inputs to partial-transpose checks additionally keep the weight in
  // clipped sectors (m + n > n_max) below this
  double mixed_overflow_tol = 1e-22;
  int mixed_cap = 60;
  double thermal_leakage_tol = 1e-14;
  int grid_theta = 5;
  int grid_phi = 5;
  int random_angles = 3;
  int uniqueness_samples = 100;
  int coherent_samples = 20;
  NumericTolerances tol;

  void check() const;
};

/// Claim ids in execution order.
const std::vector<std::string>& claim_ids();

/// Throws ConfigurationError for an unknown id.
ClaimResult run_claim(const std::string& id, const VerifyConfig& config = {});

/// Runs the named claims (all when `ids` is empty) in claim_ids() order.
std::vector<ClaimResult> run_all(const VerifyConfig& config = {},
                                 const std::vector<std::string>& ids = {});

/// Centered five-point estimate of E_p''(0)/2 for the beam splitter family
/// theta -> R(theta, phi) applied to `input`, using theta in {+-h, +-2h}.
double fd_theta2_coefficient(const JointState& input, double phi, double h);

/// theta -> E_p(R(theta, phi) input) on a shared sector basis.
double e_p_after(const JointState& input, const BeamSplitterParams& params);

}  // namespace bsent
