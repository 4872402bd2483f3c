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

// Constructors for the single- and two-mode state families: Fock, coherent,
// squeezed, thermal, SU(2)-unpolarized states and the convex mixtures built
// from them.
//
// Displacements and squeezes of states are evaluated on an enlarged working
// space and then cut back to the requested cutoff, so the returned amplitudes
// are the truncation of the exact state and `leakage` is the weight that was
// cut. Every constructor throws CutoffError when that weight exceeds the
// cutoff's leakage tolerance.

#include <span>
#include <vector>

#include "bsent/fock.hpp"

namespace bsent {

inline constexpr double kMaxSqueeze = 2.0;
inline constexpr double kMaxDisplacement = 6.0;

struct GaussianOpParams {
  Complex alpha{0.0, 0.0};
  Complex gamma{0.0, 0.0};

  /// Rejects non-finite values, |gamma| > 2 and |alpha| > 6.
  static GaussianOpParams make(Complex alpha, Complex gamma);
};

/// Weights lambda_N of rho_un = sum_N lambda_N I_N, where I_N projects onto
/// total photon number N.
struct UnpolarizedSpec {
  std::vector<double> lambda;

  /// Validates lambda_N >= 0 and sum_N lambda_N (N+1) = 1 within `tol`.
  static UnpolarizedSpec make(std::vector<double> lambda, double tol = 1e-10);
  /// lambda_N = 1/(N+1) on a single sector.
  static UnpolarizedSpec single_sector(int total);
  /// The product of two equal thermal states, lambda_N = x^N / (nbar+1)^2
  /// with x = nbar/(nbar+1), kept for N <= n_max.
  static UnpolarizedSpec thermal_equivalent(double nbar, const CutoffConfig& cutoff);
  /// Polarization-averaged laser light, lambda_N = e^{-I} I^N / (N+1)!.
  static UnpolarizedSpec laser_average(double intensity, const CutoffConfig& cutoff);

  void check(double tol = 1e-10) const;
  int max_sector() const;
  double normalization() const;
};

struct CoherentComponent {
  double weight = 0.0;
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};
};

/// One term g_k T_k rho_un(k) T_k^dagger of the squeezed/displaced
/// unpolarized family, with T_k = D(alpha)S(gamma) (x) D(beta)S(e^{-2i phi} gamma).
struct FamilySample {
  double weight = 0.0;
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};
  Complex gamma{0.0, 0.0};
  UnpolarizedSpec spec;
};

struct ProductTerm {
  double weight = 0.0;
  SingleModeState a;
  SingleModeState b;
};

struct SeparableDecomposition {
  CutoffConfig cutoff;
  std::vector<ProductTerm> terms;

  JointState reassemble() const;
};

struct MomentSet {
  Complex a;        // <a>
  Complex a2;       // <a^2>
  double n = 0.0;   // <a^dagger a>
  Complex adag;     // <a^dagger>
  Complex adag2;    // <a^dagger^2>

  Complex variance_a() const { return a2 - a * a; }            // Delta^2 a
  Complex variance_adag() const { return adag2 - adag * adag; }  // Delta^2 a^dagger
  double excess_number() const { return n - std::norm(a); }      // <a^dag a> - <a^dag><a>
};

/// Weights must be positive and sum to one within `tol`.
void check_mixture_weights(std::span<const double> weights, double tol = 1e-10);

SingleModeState fock(int n, const CutoffConfig& cutoff);

/// exp(alpha a^dag - alpha* a) and exp[(gamma a^2 - gamma* a^dag^2)/2] as
/// exponentials of the truncated generators; unitary on the truncated space.
/// The vacuum column is checked against the leakage tolerance.
Matrix displacement_matrix(Complex alpha, const CutoffConfig& cutoff);
Matrix squeeze_matrix(Complex gamma, const CutoffConfig& cutoff);

SingleModeState coherent(Complex alpha, const CutoffConfig& cutoff);
SingleModeState squeezed_vacuum(Complex gamma, const CutoffConfig& cutoff);
/// D(alpha) S(gamma) |0>: squeeze first, then displace.
SingleModeState displaced_squeezed(Complex alpha, Complex gamma, const CutoffConfig& cutoff);
/// D(alpha) |n>
SingleModeState displaced_fock(int n, Complex alpha, const CutoffConfig& cutoff);

/// Diagonal state with p_n = nbar^n / (nbar+1)^{n+1}.
SingleModeState thermal(double nbar, const CutoffConfig& cutoff);

/// Dense projector onto total photon number `total` on the joint grid.
Matrix sector_projector(int total, const CutoffConfig& cutoff);

JointState unpolarized(const UnpolarizedSpec& spec, const CutoffConfig& cutoff);

/// rho_un = sum_m p_m |m><m| (x) rho_m^(B), p_m = sum_{N>=m} lambda_N.
/// Terms with p_m < 1e-14 are dropped.
SeparableDecomposition unpolarized_separable_decomposition(const UnpolarizedSpec& spec,
                                                           const CutoffConfig& cutoff);

/// (1/(N+1)) sum_m D(alpha)|m><m|D(alpha)^dag (x) D(beta)|N-m><N-m|D(beta)^dag
JointState displaced_number_mixture(int total, Complex alpha, Complex beta,
                                    const CutoffConfig& cutoff);

/// D(alpha)S(gamma)|0> (x) D(beta)S(e^{-2i phi} gamma)|0>
JointState matched_squeezed_pair(Complex alpha, Complex beta, Complex gamma, double phi,
                                 const CutoffConfig& cutoff);

JointState zero_entanglement_family(std::span<const FamilySample> samples, double phi,
                                    const CutoffConfig& cutoff);

JointState laser_average(double intensity, const CutoffConfig& cutoff);

JointState classical_coherent_mixture(std::span<const CoherentComponent> components,
                                      const CutoffConfig& cutoff);

/// Expectation values normalized by the stored trace.
MomentSet moments(const SingleModeState& s);

}  // namespace bsent
