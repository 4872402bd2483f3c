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

// JSON forms of states, state descriptors, entanglement reports and claim
// manifests.
//
// State file:
//   {"format": "bsent-state", "version": 1, "modes": 1 | 2,
//    "kind": "pure" | "mixed", "n_max": int, "leakage_tol": real,
//    "leakage": real, "descriptor": {...}, "data": [[re, im], ...]}
// `data` holds the amplitudes (pure) or the density matrix flattened row-major
// (mixed), both in the mode-a-major basis order of the joint grid.
//
// Complex values are [re, im] pairs; plain numbers are accepted as real.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bsent/entanglement.hpp"
#include "bsent/fock.hpp"
#include "bsent/verify.hpp"

namespace bsent {

using Json = nlohmann::json;

inline constexpr int kStateFormatVersion = 1;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

/// Accepts "1", "-0.5", "2i", "-i", "1+0.5i", "1.0-2e-3i".
Complex parse_complex(std::string_view text);

Json state_to_json(const SingleModeState& s, const Json& descriptor = Json::object());
Json state_to_json(const JointState& s, const Json& descriptor = Json::object());

struct LoadedState {
  int modes = 2;
  std::vector<SingleModeState> single;  // one entry when modes == 1
  std::vector<JointState> joint;        // one entry when modes == 2
  Json descriptor;
};

LoadedState state_from_json(const Json& j);

/// Number of modes (1 or 2) a descriptor builds.
int descriptor_modes(const Json& descriptor);

/// Build the state named by a descriptor, e.g. {"kind": "coherent", "alpha": [1, 0.5]}.
/// Single-mode kinds: fock{n}, coherent{alpha}, squeezed_vacuum{gamma},
/// displaced_squeezed{alpha, gamma}, displaced_fock{n, alpha}, thermal{nbar}.
/// Two-mode kinds: product{a, b}, unpolarized{lambda | sector | nbar},
/// laser_average{intensity}, displaced_number_mixture{n, alpha, beta},
/// matched_squeezed_pair{alpha, beta, gamma, phi},
/// coherent_mixture{components: [{weight, alpha, beta}]},
/// zero_entanglement_family{phi, samples: [{weight, alpha, beta, gamma, lambda}]}.
SingleModeState build_single(const Json& descriptor, const CutoffConfig& cutoff);
JointState build_joint(const Json& descriptor, const CutoffConfig& cutoff);

Json report_to_json(const EntanglementReport& r);
Json claim_to_json(const ClaimResult& r);
/// Array of claim objects.
Json manifest_to_json(const std::vector<ClaimResult>& results);

/// Keys mirror VerifyConfig field names; tolerances sit under "tolerances".
/// Unknown keys are rejected.
VerifyConfig verify_config_from_json(const Json& j, VerifyConfig base = {});

}  // namespace bsent
