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

#include "bsent/entanglement.hpp"

#include <cmath>

#include "bsent/states.hpp"

namespace bsent {

namespace {

NegativityResult from_schmidt(const RealVector& v, const NumericTolerances& tol) {
  NegativityResult r;
  const double norm2 = v.squaredNorm();
  if (norm2 == 0.0) return r;
  const double sum = v.sum();
  r.negativity = std::max(0.0, 0.5 * (sum * sum - norm2) / norm2);
  r.min_pt_eigenvalue = v.size() > 1 ? -v[0] * v[1] / norm2 : v[0] * v[0] / norm2;
  r.ppt = r.min_pt_eigenvalue >= -tol.psd;
  return r;
}

}  // namespace

SchmidtResult schmidt(const JointState& state) {
  if (!state.is_pure()) throw DomainError("Schmidt decomposition needs a pure state");
  SchmidtResult r;
  r.values = linalg::singular_values(state.amplitude_grid());
  const double cut = r.values.size() > 0 ? kSchmidtRankThreshold * r.values[0] : 0.0;
  for (Eigen::Index k = 0; k < r.values.size(); ++k)
    if (r.values[k] > cut) ++r.rank;
  return r;
}

double e_p(const JointState& state) {
  SingleModeState b = partial_trace(state, Mode::b);
  const double tr = b.trace();
  if (!(tr > 0.0)) throw DomainError("E_p needs a state with positive trace");
  return 1.0 - purity(b) / (tr * tr);
}

Matrix partial_transpose(const Matrix& rho, const CutoffConfig& c, Mode mode) {
  if (rho.rows() != c.joint_dim() || rho.cols() != c.joint_dim())
    throw ConfigurationError("density matrix does not match the joint grid");
  const int d = c.dim();
  Matrix out(rho.rows(), rho.cols());
  for (int m = 0; m < d; ++m)
    for (int mp = 0; mp < d; ++mp)
      for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np) {
          if (mode == Mode::b)
            out(c.index(m, n), c.index(mp, np)) = rho(c.index(m, np), c.index(mp, n));
          else
            out(c.index(m, n), c.index(mp, np)) = rho(c.index(mp, n), c.index(m, np));
        }
  return out;
}

Matrix partial_transpose(const JointState& state, Mode mode) {
  return partial_transpose(state.density(), state.cutoff(), mode);
}

NegativityResult negativity(const JointState& state, const NumericTolerances& tol) {
  if (state.is_pure()) return from_schmidt(schmidt(state).values, tol);
  const double tr = state.trace();
  if (!(tr > 0.0)) throw DomainError("negativity needs a state with positive trace");
  RealVector ev = linalg::hermitian_eigenvalues(partial_transpose(state, Mode::b)) / tr;
  NegativityResult r;
  r.min_pt_eigenvalue = ev.minCoeff();
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev[k] < 0.0) r.negativity -= ev[k];
  r.ppt = r.min_pt_eigenvalue >= -tol.psd;
  return r;
}

SmallThetaPrediction small_theta_predict(const SingleModeState& a, const SingleModeState& b,
                                         double phi) {
  if (!a.is_pure() || !b.is_pure())
    throw DomainError("the small-angle prediction holds for pure product inputs only");
  MomentSet ma = moments(a);
  MomentSet mb = moments(b);
  SmallThetaPrediction p;
  p.a_var = ma.excess_number();
  p.b_var = mb.excess_number();
  p.cross_term = mb.variance_adag() * ma.variance_a();
  p.coefficient = p.a_var * p.b_var + 0.5 * (p.a_var + p.b_var) -
                  (std::exp(Complex(0.0, 2.0 * phi)) * p.cross_term).real();
  return p;
}

EntanglementReport report(const JointState& state, const NumericTolerances& tol) {
  EntanglementReport r;
  r.e_p = e_p(state);
  NegativityResult n;
  if (state.is_pure()) {
    SchmidtResult s = schmidt(state);
    n = from_schmidt(s.values, tol);
    r.schmidt_values = s.values;
    r.schmidt_rank = s.rank;
  } else {
    n = negativity(state, tol);
  }
  r.negativity = n.negativity;
  r.min_pt_eigenvalue = n.min_pt_eigenvalue;
  r.ppt = n.ppt;
  return r;
}

}  // namespace bsent
