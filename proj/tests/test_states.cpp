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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bsent/states.hpp"
#include "oracles.hpp"

using namespace bsent;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("fock states") {
  CutoffConfig c = CutoffConfig::make(4);
  CHECK(fock(0, c).amplitudes()[0] == Complex(1.0));
  CHECK(moments(fock(3, c)).n == doctest::Approx(3.0));
  CHECK(std::abs(moments(fock(3, c)).a) == 0.0);
  CHECK(purity(fock(1, c)) == 1.0);
  CHECK(fock(1, c).leakage() == 0.0);
  CHECK_THROWS_AS(fock(5, c), CutoffError);
  CHECK_THROWS_AS(fock(-1, c), ConfigurationError);
}

TEST_CASE("parameter guards") {
  CHECK_THROWS_AS(GaussianOpParams::make(0.0, 2.1), ConfigurationError);
  CHECK_THROWS_AS(GaussianOpParams::make(Complex(6.0, 0.1), 0.0), ConfigurationError);
  CHECK_THROWS_AS(GaussianOpParams::make(std::nan(""), 0.0), ConfigurationError);
  CHECK_NOTHROW(GaussianOpParams::make(Complex(4.0, 4.0) / std::sqrt(2.0), 2.0));
}

TEST_CASE("displacement matrix") {
  CutoffConfig c = CutoffConfig::make(30);
  CHECK(max_abs(displacement_matrix(0.0, c) - Matrix::Identity(31, 31)) < 1e-15);
  Matrix d = displacement_matrix(1.0, c);
  Vector expect = oracle::coherent_amplitudes(1.0, 30);
  CHECK((d.col(0).head(6) - expect.head(6)).cwiseAbs().maxCoeff() < 1e-12);
  const Complex alpha(0.8, 0.3);
  Matrix round = displacement_matrix(alpha, c) * displacement_matrix(-alpha, c);
  CHECK(max_abs(round - Matrix::Identity(31, 31)) < 1e-10);
  CHECK(linalg::unitarity_defect(displacement_matrix(alpha, c)) < 1e-10);
  try {
    displacement_matrix(3.0, CutoffConfig::make(5));
    FAIL("expected a cutoff error");
  } catch (const CutoffError& e) {
    CHECK(e.recommended_n_max() > 5);
    CHECK_NOTHROW(displacement_matrix(3.0, CutoffConfig::make(e.recommended_n_max())));
  }
}

TEST_CASE("squeeze matrix and squeezed vacuum") {
  CutoffConfig c = CutoffConfig::make(40);
  CHECK(max_abs(squeeze_matrix(0.0, c) - Matrix::Identity(41, 41)) < 1e-15);
  const double r = 0.5;
  SingleModeState s = squeezed_vacuum(r, c);
  MomentSet m = moments(s);
  CHECK(m.n == doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-8));
  CHECK(std::abs(m.a2 - Complex(-std::sinh(r) * std::cosh(r))) < 1e-8);
  for (int k = 1; k <= 40; k += 2) CHECK(std::abs(s.amplitudes()[k]) == 0.0);
  const Complex g = std::polar(0.7, 1.1);
  CutoffConfig c60 = CutoffConfig::make(60);
  Vector expect = oracle::squeezed_vacuum_amplitudes(g, 60);
  CHECK((squeezed_vacuum(g, c60).amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-12);
  // the truncated generator differs from the exact operator only near the edge
  CHECK((squeeze_matrix(g, c60).col(0) - expect).head(31).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(linalg::unitarity_defect(squeeze_matrix(g, c60)) < 1e-10);
  CHECK_THROWS_AS(squeezed_vacuum(g, c), CutoffError);
  CHECK_THROWS_AS(squeezed_vacuum(1.5, CutoffConfig::make(10)), CutoffError);
}

TEST_CASE("coherent and displaced squeezed states") {
  CutoffConfig c = CutoffConfig::make(40);
  const Complex alpha(0.9, -0.4);
  CHECK((coherent(alpha, c).amplitudes() - oracle::coherent_amplitudes(alpha, 40)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK(trace_distance(displaced_squeezed(alpha, 0.0, c), coherent(alpha, c)) < 1e-14);
  CHECK(trace_distance(displaced_squeezed(0.0, 0.3, c), squeezed_vacuum(0.3, c)) < 1e-14);
  MomentSet one = moments(coherent(1.0, c));
  CHECK(std::abs(one.a - 1.0) < 1e-10);
  CHECK(std::abs(one.variance_a()) < 1e-10);
  // displacement acts after squeezing, so the mean field is alpha itself
  const Complex g = std::polar(0.4, 0.6);
  MomentSet ds = moments(displaced_squeezed(alpha, g, CutoffConfig::make(60)));
  CHECK(std::abs(ds.a - alpha) < 1e-12);
  Complex expect = -std::exp(Complex(0.0, -std::arg(g))) * std::sinh(0.4) * std::cosh(0.4);
  CHECK(std::abs(ds.variance_a() - expect) < 1e-12);
  SingleModeState df = displaced_fock(2, alpha, c);
  CHECK(std::abs(moments(df).a - alpha) < 1e-12);
  CHECK(moments(df).excess_number() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("thermal states") {
  CutoffConfig c = CutoffConfig::make(40);
  CHECK(trace_distance(thermal(0.0, c), fock(0, c)) == 0.0);
  SingleModeState t1 = thermal(1.0, c);
  CHECK(t1.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(t1.matrix()(1, 1).real() == doctest::Approx(0.25));
  CHECK(purity(thermal(0.5, c)) == doctest::Approx(1.0 / 2.0).epsilon(1e-9));
  CHECK(validate(thermal(0.5, c)).passed());
  CHECK_THROWS_AS(thermal(5.0, CutoffConfig::make(10)), CutoffError);
  CHECK_THROWS_AS(thermal(-0.1, c), ConfigurationError);
}

TEST_CASE("sector projectors") {
  CutoffConfig c = CutoffConfig::make(4);
  Matrix p0 = sector_projector(0, c);
  CHECK(p0(0, 0) == Complex(1.0));
  CHECK(p0.trace() == Complex(1.0));
  Matrix p2 = sector_projector(2, c);
  CHECK(p2.trace().real() == 3.0);
  CHECK(max_abs(p2 * p2 - p2) == 0.0);
  CHECK(max_abs(p2 * sector_projector(3, c)) == 0.0);
  CHECK_THROWS_AS(sector_projector(5, c), CutoffError);
}

TEST_CASE("unpolarized states and their product decomposition") {
  CutoffConfig c = CutoffConfig::make(6);
  JointState vac = unpolarized(UnpolarizedSpec::make({1.0}), c);
  CHECK(vac.matrix()(0, 0) == Complex(1.0));
  JointState s1 = unpolarized(UnpolarizedSpec::single_sector(1), c);
  CHECK(s1.matrix()(c.index(1, 0), c.index(1, 0)).real() == doctest::Approx(0.5));
  CHECK(s1.matrix()(c.index(0, 1), c.index(0, 1)).real() == doctest::Approx(0.5));
  CHECK_THROWS_AS(UnpolarizedSpec::make({0.5, 0.5}), SpecError);
  CHECK_THROWS_AS(UnpolarizedSpec::make({1.5, -0.25}), SpecError);

  SeparableDecomposition dec = unpolarized_separable_decomposition(UnpolarizedSpec::make({0.5, 0.25}), c);
  REQUIRE(dec.terms.size() == 2);
  CHECK(dec.terms[0].weight == doctest::Approx(0.75));
  CHECK(dec.terms[1].weight == doctest::Approx(0.25));
  CHECK(trace_distance(dec.reassemble(), unpolarized(UnpolarizedSpec::make({0.5, 0.25}), c)) < 1e-12);

  SeparableDecomposition trivial = unpolarized_separable_decomposition(UnpolarizedSpec::make({1.0}), c);
  REQUIRE(trivial.terms.size() == 1);
  CHECK(trivial.terms[0].weight == 1.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> lambda(6);
    double norm = 0.0;
    for (int n = 0; n < 6; ++n) {
      lambda[n] = u(rng) < 0.3 ? 0.0 : u(rng);
      norm += lambda[n] * (n + 1);
    }
    if (norm == 0.0) continue;
    for (double& l : lambda) l /= norm;
    UnpolarizedSpec spec = UnpolarizedSpec::make(lambda);
    SeparableDecomposition d = unpolarized_separable_decomposition(spec, c);
    for (const ProductTerm& t : d.terms) {
      CHECK(t.weight >= 0.0);
      CHECK(t.weight <= 1.0);
      CHECK(validate(t.b).passed());
    }
    CHECK(trace_distance(d.reassemble(), unpolarized(spec, c)) < 1e-12);
  }
}

TEST_CASE("thermal products are unpolarized") {
  for (double nbar : {0.3, 1.0}) {
    CutoffConfig c = CutoffConfig::make(60);
    JointState prod = tensor(thermal(nbar, c), thermal(nbar, c));
    CHECK(trace_distance(prod, unpolarized(UnpolarizedSpec::thermal_equivalent(nbar, c), c)) < 1e-10);
  }
  CHECK_THROWS_AS(UnpolarizedSpec::thermal_equivalent(2.0, CutoffConfig::make(10)), CutoffError);
}

TEST_CASE("laser average") {
  CutoffConfig c = CutoffConfig::make(30);
  CHECK(trace_distance(laser_average(0.0, c), unpolarized(UnpolarizedSpec::make({1.0}), c)) == 0.0);
  UnpolarizedSpec spec = UnpolarizedSpec::laser_average(1.5, c);
  CHECK(spec.normalization() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.lambda[2] == doctest::Approx(std::exp(-1.5) * 1.5 * 1.5 / 6.0));
  CHECK_THROWS_AS(laser_average(4.0, CutoffConfig::make(8)), CutoffError);
}

TEST_CASE("displaced number mixtures") {
  CutoffConfig c = CutoffConfig::make(30);
  const Complex a(0.5, 0.2), b(-0.3, 0.1);
  JointState n0 = displaced_number_mixture(0, a, b, c);
  CHECK(trace_distance(n0, JointState::mixed(tensor(coherent(a, c), coherent(b, c)).density(), c)) < 1e-12);
  JointState n1 = displaced_number_mixture(1, 0.0, 0.0, c);
  CHECK(trace_distance(n1, unpolarized(UnpolarizedSpec::single_sector(1), c)) < 1e-14);
  for (int n = 0; n <= 3; ++n)
    CHECK(purity(displaced_number_mixture(n, 0.0, 0.0, c)) == doctest::Approx(1.0 / (n + 1)));
  // equals the displaced single-sector unpolarized state
  Matrix dd = oracle::kron(displacement_matrix(a, c), displacement_matrix(b, c));
  Matrix expect = dd * unpolarized(UnpolarizedSpec::single_sector(2), c).matrix() * dd.adjoint();
  CHECK(max_abs(displaced_number_mixture(2, a, b, c).matrix() - expect) < 1e-10);
  CHECK(validate(displaced_number_mixture(3, a, b, c)).passed());
}

TEST_CASE("matched squeezed pairs") {
  CutoffConfig c = CutoffConfig::make(50);
  const Complex a(0.4, 0.1), b(-0.2, 0.0);
  CHECK(trace_distance(matched_squeezed_pair(a, b, 0.0, 0.8, c), tensor(coherent(a, c), coherent(b, c))) <
        1e-14);
  const Complex g = std::polar(0.5, 0.2);
  const double phi = 0.8;
  JointState pair = matched_squeezed_pair(0.0, 0.0, g, phi, c);
  MomentSet mb = moments(partial_trace(pair, Mode::b));
  MomentSet ref = moments(squeezed_vacuum(std::exp(Complex(0.0, -2.0 * phi)) * g, c));
  CHECK(std::abs(mb.a2 - ref.a2) < 1e-12);
  CHECK(validate(pair).passed());
}

TEST_CASE("zero-entanglement family") {
  CutoffConfig c = CutoffConfig::make(40);
  const double phi = 0.6;
  const Complex g = std::polar(0.2, 0.9);
  std::vector<FamilySample> one = {{1.0, Complex(0.3, 0.1), Complex(-0.2, 0.0), g, UnpolarizedSpec::make({1.0})}};
  JointState fam = zero_entanglement_family(one, phi, c);
  JointState pair = matched_squeezed_pair(Complex(0.3, 0.1), Complex(-0.2, 0.0), g, phi, c);
  CHECK(max_abs(fam.matrix() - pair.density()) < 1e-14);
  std::vector<FamilySample> two = {{0.5, 0.4, 0.0, g, UnpolarizedSpec::make({1.0})},
                                   {0.5, -0.4, 0.0, g, UnpolarizedSpec::make({1.0})}};
  CHECK(purity(zero_entanglement_family(two, phi, c)) < 1.0 - 1e-3);
  two[0].weight = 0.6;
  CHECK_THROWS_AS(zero_entanglement_family(two, phi, c), SpecError);
  std::vector<FamilySample> mixed = {{0.7, 0.3, 0.1, g, UnpolarizedSpec::single_sector(1)},
                                     {0.3, 0.0, -0.2, g, UnpolarizedSpec::make({0.5, 0.25})}};
  CHECK(validate(zero_entanglement_family(mixed, phi, c)).passed());
}

TEST_CASE("classical coherent mixtures") {
  CutoffConfig c = CutoffConfig::make(30);
  std::vector<CoherentComponent> one = {{1.0, 0.5, Complex(0.0, 0.3)}};
  CHECK(trace_distance(classical_coherent_mixture(one, c),
                       JointState::mixed(tensor(coherent(0.5, c), coherent(Complex(0.0, 0.3), c)).density(), c)) <
        1e-14);
  std::vector<CoherentComponent> two = {{0.3, 0.5, 0.1}, {0.7, -0.2, 0.4}};
  JointState m = classical_coherent_mixture(two, c);
  ValidationReport r = validate(m);
  CHECK(r.passed());
  CHECK(m.trace() == doctest::Approx(1.0).epsilon(1e-12));
  two[0].weight = -0.3;
  CHECK_THROWS_AS(classical_coherent_mixture(two, c), SpecError);
}

TEST_CASE("moments") {
  CutoffConfig c = CutoffConfig::make(40);
  MomentSet v = moments(fock(0, c));
  CHECK(std::abs(v.a) + std::abs(v.a2) + v.n + std::abs(v.adag) + std::abs(v.adag2) == 0.0);
  CHECK(moments(fock(4, c)).n == doctest::Approx(4.0));
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int k = 0; k < 20; ++k) {
    Vector psi = Vector::Zero(41);
    for (int n = 0; n < 6; ++n) psi[n] = Complex(g(rng), g(rng));
    psi /= psi.norm();
    MomentSet m = moments(SingleModeState::pure(psi, c));
    CHECK(m.excess_number() > 1e-10);
    CHECK(std::abs(m.adag - std::conj(m.a)) < 1e-14);
  }
  for (int k = 0; k < 10; ++k) {
    Complex alpha(g(rng), g(rng));
    CHECK(std::abs(moments(coherent(alpha, CutoffConfig::make(60))).excess_number()) < 1e-10);
  }
}
