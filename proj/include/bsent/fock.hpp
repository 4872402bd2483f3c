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

// Truncated single- and two-mode Fock-space states.
//
// A single mode is represented on span{|0>, ..., |n_max>}. Two-mode states
// live on the tensor product, flattened mode-a major: index(m, n) =
// m * (n_max + 1) + n. Truncation never renormalizes; the probability
// weight cut off above n_max is carried along as `leakage`.

#include <algorithm>
#include <string>
#include <utility>

#include "bsent/errors.hpp"
#include "bsent/linalg.hpp"

namespace bsent {

struct CutoffConfig {
  int n_max = 1;
  double leakage_tol = 1e-12;

  /// Validates n_max >= 1 and 0 < leakage_tol < 1.
  static CutoffConfig make(int n_max, double leakage_tol = 1e-12);

  int dim() const { return n_max + 1; }
  int joint_dim() const { return dim() * dim(); }
  int index(int m, int n) const { return m * dim() + n; }

  friend bool operator==(const CutoffConfig&, const CutoffConfig&) = default;
};

struct NumericTolerances {
  double herm = 1e-10;
  double psd = 1e-9;
  double unitary = 1e-10;
  double eq = 1e-10;

  /// Throws ConfigurationError unless every field lies in (0, 1e-6].
  void check() const;
};

enum class StateKind { pure, mixed };
enum class Mode { a, b };

class SingleModeState {
 public:
  static SingleModeState pure(Vector amplitudes, const CutoffConfig& cutoff,
                              double leakage = 0.0);
  static SingleModeState mixed(Matrix rho, const CutoffConfig& cutoff,
                               double leakage = 0.0);

  StateKind kind() const { return kind_; }
  bool is_pure() const { return kind_ == StateKind::pure; }
  const CutoffConfig& cutoff() const { return cutoff_; }
  double leakage() const { return leakage_; }
  int dim() const { return cutoff_.dim(); }

  /// Throws DomainError for mixed states.
  const Vector& amplitudes() const;
  /// Throws DomainError for pure states.
  const Matrix& matrix() const;

  Matrix density() const;
  double trace() const;

 private:
  SingleModeState(StateKind kind, Vector amps, Matrix rho, CutoffConfig cutoff,
                  double leakage)
      : kind_(kind), amps_(std::move(amps)), rho_(std::move(rho)),
        cutoff_(cutoff), leakage_(leakage) {}

  StateKind kind_;
  Vector amps_;
  Matrix rho_;
  CutoffConfig cutoff_;
  double leakage_;
};

class JointState {
 public:
  /// `amplitudes` is flattened mode-a major, length (n_max+1)^2.
  static JointState pure(Vector amplitudes, const CutoffConfig& cutoff,
                         double leakage = 0.0);
  static JointState mixed(Matrix rho, const CutoffConfig& cutoff,
                          double leakage = 0.0);

  StateKind kind() const { return kind_; }
  bool is_pure() const { return kind_ == StateKind::pure; }
  const CutoffConfig& cutoff() const { return cutoff_; }
  double leakage() const { return leakage_; }
  int dim() const { return cutoff_.joint_dim(); }

  const Vector& amplitudes() const;
  const Matrix& matrix() const;

  /// Pure amplitudes reshaped to a (n_max+1) x (n_max+1) grid, row m = mode a.
  Matrix amplitude_grid() const;
  Matrix density() const;
  double trace() const;

 private:
  JointState(StateKind kind, Vector amps, Matrix rho, CutoffConfig cutoff,
             double leakage)
      : kind_(kind), amps_(std::move(amps)), rho_(std::move(rho)),
        cutoff_(cutoff), leakage_(leakage) {}

  StateKind kind_;
  Vector amps_;
  Matrix rho_;
  CutoffConfig cutoff_;
  double leakage_;
};

struct ValidationReport {
  double hermiticity_defect = 0.0;
  double trace = 0.0;
  double trace_defect = 0.0;  // |trace + leakage - 1|
  double min_eigenvalue = 0.0;
  double leakage = 0.0;

  bool hermitian_ok = true;
  bool trace_ok = true;
  bool psd_ok = true;
  bool leakage_ok = true;

  bool passed() const { return hermitian_ok && trace_ok && psd_ok && leakage_ok; }
};

/// Pure inputs give a pure product; otherwise the Kronecker product of the
/// densities. Throws ConfigurationError on cutoff mismatch.
JointState tensor(const SingleModeState& a, const SingleModeState& b);

/// Reduced density operator of the mode named by `keep`.
SingleModeState partial_trace(const JointState& rho, Mode keep);

/// Tr[rho^2] of the state as stored (no renormalization).
double purity(const SingleModeState& s);
double purity(const JointState& s);

/// (1/2) || rho - sigma ||_1. Pure-pure pairs are reduced to their common
/// two-dimensional span; everything else goes through a dense eigensolve of
/// the Hermitian difference.
double trace_distance(const SingleModeState& rho, const SingleModeState& sigma);
double trace_distance(const JointState& rho, const JointState& sigma);

ValidationReport validate(const SingleModeState& s, const NumericTolerances& tol = {});
ValidationReport validate(const JointState& s, const NumericTolerances& tol = {});

/// Probability weight held in two-mode sectors of total photon number above
/// n_max, where the grid no longer contains the whole sector.
double sector_overflow(const JointState& s);

/// Tries cutoffs n_max = start, start+1, ... (jumping ahead to any
/// recommendation carried by a CutoffError) until `build` succeeds.
template <class Build>
auto select_cutoff(Build&& build, double leakage_tol, int cap, int start = 1)
    -> decltype(build(CutoffConfig{})) {
  int n = start;
  int last_recommendation = start;
  while (n <= cap) {
    try {
      return build(CutoffConfig::make(n, leakage_tol));
    } catch (const CutoffError& e) {
      last_recommendation = e.recommended_n_max();
      n = std::max(n + 1, last_recommendation);
    }
  }
  throw CutoffError("no cutoff up to " + std::to_string(cap) +
                        " meets the leakage tolerance",
                    std::max(last_recommendation, cap + 1));
}

}  // namespace bsent
