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

// Lossless two-mode beam splitter R(theta, phi) = exp(-xi a^dag b + xi* b^dag a),
// xi = (theta/2) e^{-i phi}, on the truncated joint Fock space.
//
// R commutes with the total photon number, so it is assembled sector by
// sector. Within sector N the states |m, N-m> are indexed by m, the photon
// number of mode a, restricted to the grid. Sectors with N <= n_max fit the
// grid completely and their blocks are exact; the higher, clipped sectors get
// the exponential of the generator restricted to the grid.
//
// Convention: R|1,0> = cos(theta/2)|1,0> + e^{i phi} sin(theta/2)|0,1>.

#include <memory>
#include <vector>

#include "bsent/fock.hpp"

namespace bsent {

struct BeamSplitterParams {
  double theta = 0.0;
  double phi = 0.0;

  /// Brings (theta, phi) to theta in [0, 2pi], phi in [0, 2pi).
  /// (-theta, phi) becomes (theta, phi + pi), which is exact. Angles above
  /// 2pi use the 4pi period of the rotation group, exact on complete sectors.
  static BeamSplitterParams make(double theta, double phi);
};

struct SectorBlock {
  int total = 0;    // N
  int first_m = 0;  // photon number of mode a in the block's first row
  Matrix unitary;
};

/// Theta- and phi-independent spectral data of every sector generator,
/// shared by all beam splitters on one cutoff. With P = diag(e^{i phi (N-m)})
/// and D = diag(i^j) over the block rows j, each block is
/// U = P D Q exp(-i theta Lambda) Q^T D^dag P^dag, where Q Lambda Q^T
/// diagonalizes a real symmetric tridiagonal matrix.
class SectorBasis {
 public:
  explicit SectorBasis(const CutoffConfig& cutoff);

  const CutoffConfig& cutoff() const { return cutoff_; }
  int sector_count() const { return 2 * cutoff_.n_max + 1; }
  bool complete(int total) const { return total <= cutoff_.n_max; }
  int first_m(int total) const;
  int size(int total) const;
  const RealMatrix& eigenvectors(int total) const;
  const RealVector& eigenvalues(int total) const;

 private:
  CutoffConfig cutoff_;
  std::vector<RealMatrix> vectors_;
  std::vector<RealVector> values_;
};

class BeamSplitter {
 public:
  BeamSplitter(const BeamSplitterParams& params, const CutoffConfig& cutoff);
  BeamSplitter(const BeamSplitterParams& params, std::shared_ptr<const SectorBasis> basis);

  const BeamSplitterParams& params() const { return params_; }
  const CutoffConfig& cutoff() const { return basis_->cutoff(); }

  SectorBlock block(int total) const;
  std::vector<SectorBlock> blocks() const;
  SparseMatrix sparse() const;
  Matrix dense() const;

  /// R|psi> for pure states, R rho R^dag otherwise.
  JointState apply(const JointState& state) const;

 private:
  Vector rotate_sector(int total, const Vector& x) const;

  BeamSplitterParams params_;
  std::shared_ptr<const SectorBasis> basis_;
};

/// Block-diagonal R(theta, phi) as a sparse matrix on the joint grid.
SparseMatrix bs_unitary(const BeamSplitterParams& params, const CutoffConfig& cutoff);

JointState apply_bs(const JointState& state, const BeamSplitterParams& params);

/// The generator -xi a^dag b + xi* b^dag a restricted to sector `total`,
/// in the same row order as SectorBlock.
Matrix sector_generator(int total, const BeamSplitterParams& params, const CutoffConfig& cutoff);

/// Dense Pade exponential of sector_generator; the reference for SectorBlock.
Matrix sector_block_exponential(int total, const BeamSplitterParams& params,
                                const CutoffConfig& cutoff);

/// Amplitudes c_m of R|N, 0> on |m, N-m>, m = 0..N:
/// c_m = sqrt(C(N, m)) cos^m(theta/2) sin^{N-m}(theta/2) e^{i phi (N-m)}.
Vector rotated_fock_coefficients(int total, const BeamSplitterParams& params);

struct DisplacementPair {
  Complex alpha;
  Complex beta;
};

/// Output amplitudes for a coherent input |alpha> (x) |beta>:
/// (alpha c - beta e^{-i phi} s, alpha e^{i phi} s + beta c).
DisplacementPair transform_displacement(Complex alpha, Complex beta,
                                        const BeamSplitterParams& params);

/// Coefficients of R [S(gamma_a) (x) S(gamma_b)] R^dag written as
/// exp[gamma_a' a^2/2 + gamma_b' b^2/2 + kappa a b - h.c.].
struct SqueezeTransformResult {
  Complex gamma_a;
  Complex gamma_b;
  Complex two_mode_coeff;  // kappa
};

SqueezeTransformResult transform_squeeze(Complex gamma_a, Complex gamma_b,
                                         const BeamSplitterParams& params);

/// Sparse joint generator gamma_a a^2/2 + gamma_b b^2/2 + kappa a b - h.c.
SparseMatrix squeeze_generator(const SqueezeTransformResult& coeffs, const CutoffConfig& cutoff);

}  // namespace bsent
