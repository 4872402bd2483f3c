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

#include "bsent/io.hpp"
#include "bsent/states.hpp"

using namespace bsent;

namespace {

bool bit_equal(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x.data()[i] != y.data()[i]) return false;
  return true;
}

Vector random_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(g(rng), g(rng));
  return v / v.norm();
}

}  // namespace

TEST_CASE("complex literals") {
  CHECK(parse_complex("1") == Complex(1, 0));
  CHECK(parse_complex("-0.5") == Complex(-0.5, 0));
  CHECK(parse_complex("2i") == Complex(0, 2));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("1+0.5i") == Complex(1, 0.5));
  CHECK(parse_complex("1.0-2e-3i") == Complex(1, -2e-3));
  CHECK(parse_complex(" 3 ") == Complex(3, 0));
  CHECK_THROWS_AS(parse_complex(""), ConfigurationError);
  CHECK_THROWS_AS(parse_complex("1+"), ConfigurationError);
  CHECK_THROWS_AS(parse_complex("abc"), ConfigurationError);
  CHECK(complex_from_json(Json::array({0.25, -1.0})) == Complex(0.25, -1.0));
  CHECK(complex_from_json(Json(2.0)) == Complex(2.0, 0.0));
  CHECK(complex_from_json(Json("0.5i")) == Complex(0.0, 0.5));
  CHECK_THROWS_AS(complex_from_json(Json::array({1.0})), ConfigurationError);
}

TEST_CASE("state round trips are bit exact") {
  std::mt19937_64 rng(31);
  CutoffConfig c = CutoffConfig::make(4, 3e-11);

  Vector v = random_vector(rng, c.dim()) * (1.0 / 3.0);
  SingleModeState s1 = SingleModeState::pure(v, c, 1e-17);
  LoadedState l1 = state_from_json(Json::parse(state_to_json(s1).dump()));
  REQUIRE(l1.modes == 1);
  CHECK(bit_equal(l1.single.front().amplitudes(), v));
  CHECK(l1.single.front().leakage() == 1e-17);
  CHECK(l1.single.front().cutoff() == c);

  Vector w = random_vector(rng, c.joint_dim());
  Matrix rho = w * w.adjoint() * 0.7;
  rho(3, 3) += 0.3 / 7.0;
  JointState j2 = JointState::mixed(rho, c, 0.1);
  Json doc = state_to_json(j2, Json{{"kind", "custom"}});
  LoadedState l2 = state_from_json(Json::parse(doc.dump()));
  REQUIRE(l2.modes == 2);
  CHECK(bit_equal(l2.joint.front().matrix(), rho));
  CHECK(l2.joint.front().leakage() == 0.1);
  CHECK(l2.descriptor["kind"] == "custom");
  CHECK(doc["format"] == "bsent-state");
  CHECK(doc["version"] == 1);
  CHECK(doc["data"].size() == 625);
  // row-major ordering
  CHECK(complex_from_json(doc["data"][1]) == rho(0, 1));

  JointState p2 = JointState::pure(w, c);
  CHECK(bit_equal(state_from_json(state_to_json(p2)).joint.front().amplitudes(), w));
}

TEST_CASE("malformed state files") {
  CutoffConfig c = CutoffConfig::make(2);
  Json good = state_to_json(fock(1, c));
  Json bad = good;
  bad["format"] = "other";
  CHECK_THROWS_AS(state_from_json(bad), ConfigurationError);
  bad = good;
  bad["version"] = 2;
  CHECK_THROWS_AS(state_from_json(bad), ConfigurationError);
  bad = good;
  bad["data"].erase(0);
  CHECK_THROWS_AS(state_from_json(bad), ConfigurationError);
  bad = good;
  bad.erase("n_max");
  CHECK_THROWS_AS(state_from_json(bad), ConfigurationError);
}

TEST_CASE("descriptors") {
  CutoffConfig c = CutoffConfig::make(30);
  CHECK(descriptor_modes(Json{{"kind", "coherent"}, {"alpha", 1.0}}) == 1);
  CHECK(descriptor_modes(Json{{"kind", "unpolarized"}, {"sector", 2}}) == 2);
  CHECK_THROWS_AS(descriptor_modes(Json{{"kind", "nope"}}), ConfigurationError);

  SingleModeState coh = build_single(Json{{"kind", "coherent"}, {"alpha", Json::array({0.5, 0.2})}}, c);
  CHECK(bit_equal(coh.amplitudes(), coherent(Complex(0.5, 0.2), c).amplitudes()));
  SingleModeState th = build_single(Json{{"kind", "thermal"}, {"nbar", 0.5}}, c);
  CHECK(bit_equal(th.matrix(), thermal(0.5, c).matrix()));

  Json prod{{"kind", "product"},
            {"a", {{"kind", "fock"}, {"n", 1}}},
            {"b", {{"kind", "squeezed_vacuum"}, {"gamma", "0.3i"}}}};
  CHECK(bit_equal(build_joint(prod, c).amplitudes(),
                  tensor(fock(1, c), squeezed_vacuum(Complex(0, 0.3), c)).amplitudes()));

  JointState un = build_joint(Json{{"kind", "unpolarized"}, {"lambda", {0.5, 0.25}}}, c);
  CHECK(bit_equal(un.matrix(), unpolarized(UnpolarizedSpec::make({0.5, 0.25}), c).matrix()));

  Json mix{{"kind", "coherent_mixture"},
           {"components", {{{"weight", 0.4}, {"alpha", 0.3}, {"beta", 0.0}},
                           {{"weight", 0.6}, {"alpha", -0.2}, {"beta", "0.1i"}}}}};
  CHECK(validate(build_joint(mix, c)).passed());

  Json fam{{"kind", "zero_entanglement_family"},
           {"phi", 0.5},
           {"samples", {{{"weight", 1.0}, {"alpha", 0.2}, {"beta", 0.1}, {"gamma", 0.1}, {"lambda", {1.0}}}}}};
  CHECK(validate(build_joint(fam, c)).passed());

  CHECK_THROWS_AS(build_joint(Json{{"kind", "unpolarized"}}, c), ConfigurationError);
  CHECK_THROWS_AS(build_single(Json{{"kind", "fock"}, {"n", 1.5}}, c), ConfigurationError);
  CHECK_THROWS_AS(build_joint(Json{{"kind", "coherent"}, {"alpha", 1.0}}, c), ConfigurationError);
}

TEST_CASE("reports and manifests") {
  EntanglementReport r;
  r.e_p = 0.25;
  r.schmidt_rank = 2;
  r.schmidt_values = RealVector::Constant(2, std::sqrt(0.5));
  Json j = report_to_json(r);
  CHECK(j["e_p"] == 0.25);
  CHECK(j["schmidt_rank"] == 2);
  CHECK(j["schmidt_values"].size() == 2);
  EntanglementReport m;
  CHECK_FALSE(report_to_json(m).contains("schmidt_rank"));

  ClaimResult cr;
  cr.claim_id = "x";
  cr.pass = true;
  cr.checks.push_back(SubCheck{"c", 1e-13, 1e-10, Bound::at_most, true});
  Json man = manifest_to_json({cr, cr});
  REQUIRE(man.is_array());
  CHECK(man.size() == 2);
  for (const char* key : {"claim_id", "anchor", "metric", "threshold", "pass", "runtime_ms", "seed"})
    CHECK(man[0].contains(key));
  CHECK(man[0]["checks"][0]["bound"] == "at_most");
}

TEST_CASE("verify configuration") {
  VerifyConfig c = verify_config_from_json(Json{{"seed", 5}, {"grid_theta", 6}, {"tolerances", {{"psd", 1e-8}}}});
  CHECK(c.seed == 5);
  CHECK(c.grid_theta == 6);
  CHECK(c.tol.psd == 1e-8);
  CHECK(c.grid_phi == VerifyConfig{}.grid_phi);
  CHECK_THROWS_AS(verify_config_from_json(Json{{"sead", 5}}), ConfigurationError);
  CHECK_THROWS_AS(verify_config_from_json(Json{{"tolerances", {{"x", 1e-8}}}}), ConfigurationError);
  CHECK_THROWS_AS(verify_config_from_json(Json{{"fd_step", "big"}}), ConfigurationError);
  CHECK_THROWS_AS(verify_config_from_json(Json{{"fd_step", -1.0}}), ConfigurationError);
}
