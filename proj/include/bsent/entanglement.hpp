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

// Bipartite entanglement diagnostics for two-mode states: Schmidt
// decomposition, the reduced-state purity measure E_p, partial transposition
// and negativity, and the second-order small-angle prediction of E_p for a
// pure product input.

#include <optional>

#include "bsent/fock.hpp"

namespace bsent {

inline constexpr double kSchmidtRankThreshold = 1e-8;

struct SchmidtResult {
  RealVector values;  // descending, not renormalized
  int rank = 0;       // values above kSchmidtRankThreshold * largest
};

/// Throws DomainError for mixed states.
SchmidtResult schmidt(const JointState& state);

/// 1 - Tr[rho_b^2] / (Tr rho_b)^2, rho_b the reduced state of mode b.
double e_p(const JointState& state);

/// Transposes the bra/ket indices of `mode` on a joint density matrix.
Matrix partial_transpose(const Matrix& rho, const CutoffConfig& cutoff, Mode mode = Mode::b);
Matrix partial_transpose(const JointState& state, Mode mode = Mode::b);

struct NegativityResult {
  double negativity = 0.0;         // |sum of negative PT eigenvalues|
  double min_pt_eigenvalue = 0.0;
  bool ppt = true;                 // min_pt_eigenvalue >= -tol.psd
};

/// PT spectrum of the state normalized to unit trace. Pure states use their
/// Schmidt values (eigenvalues v_i^2 and +-v_i v_j); mixed states a dense
/// Hermitian eigensolve.
NegativityResult negativity(const JointState& state, const NumericTolerances& tol = {});

struct SmallThetaPrediction {
  double coefficient = 0.0;  // E_p ~ coefficient * theta^2
  double a_var = 0.0;        // A = <a^dag a> - <a^dag><a>
  double b_var = 0.0;        // B = <b^dag b> - <b^dag><b>
  Complex cross_term;        // Delta^2 b^dag * Delta^2 a
};

/// coefficient = A B + (A + B)/2 - Re[e^{2i phi} Delta^2 b^dag Delta^2 a]
/// for the pure product |psi_a> (x) |psi_b>. Throws DomainError for mixed
/// inputs.
SmallThetaPrediction small_theta_predict(const SingleModeState& a, const SingleModeState& b,
                                         double phi);

struct EntanglementReport {
  double e_p = 0.0;
  std::optional<RealVector> schmidt_values;
  std::optional<int> schmidt_rank;
  double negativity = 0.0;
  double min_pt_eigenvalue = 0.0;
  bool ppt = true;
};

EntanglementReport report(const JointState& state, const NumericTolerances& tol = {});

}  // namespace bsent
