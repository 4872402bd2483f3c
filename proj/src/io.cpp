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

#include "bsent/io.hpp"

#include <cctype>
#include <cmath>

#include "bsent/states.hpp"

namespace bsent {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigurationError(what); }

const Json& field(const Json& d, const char* key) {
  if (!d.is_object() || !d.contains(key))
    bad("descriptor '" + d.value("kind", std::string("?")) + "' needs '" + key + "'");
  return d.at(key);
}

double real_field(const Json& d, const char* key) {
  const Json& v = field(d, key);
  if (!v.is_number()) bad(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double real_field_or(const Json& d, const char* key, double fallback) {
  return d.contains(key) ? real_field(d, key) : fallback;
}

int int_field(const Json& d, const char* key) {
  const Json& v = field(d, key);
  if (!v.is_number_integer()) bad(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

Complex complex_field(const Json& d, const char* key) { return complex_from_json(field(d, key)); }

Complex complex_field_or(const Json& d, const char* key) {
  return d.contains(key) ? complex_field(d, key) : Complex{};
}

std::string kind_of(const Json& d) {
  if (!d.is_object() || !d.contains("kind") || !d.at("kind").is_string())
    bad("a state descriptor must be an object with a string 'kind'");
  return d.at("kind").get<std::string>();
}

std::vector<double> real_list(const Json& v, const char* key) {
  if (!v.is_array()) bad(std::string("'") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const Json& x : v) {
    if (!x.is_number()) bad(std::string("'") + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

UnpolarizedSpec spec_from(const Json& d, const CutoffConfig& cutoff) {
  if (d.contains("lambda")) return UnpolarizedSpec::make(real_list(d.at("lambda"), "lambda"));
  if (d.contains("sector")) return UnpolarizedSpec::single_sector(int_field(d, "sector"));
  if (d.contains("nbar")) return UnpolarizedSpec::thermal_equivalent(real_field(d, "nbar"), cutoff);
  bad("unpolarized weights need 'lambda', 'sector' or 'nbar'");
}

Json data_array(const Complex* p, Eigen::Index n) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < n; ++k) a.push_back(complex_to_json(p[k]));
  return a;
}

template <class State>
Json state_json(const State& s, int modes, const Json& descriptor) {
  Json j;
  j["format"] = "bsent-state";
  j["version"] = kStateFormatVersion;
  j["modes"] = modes;
  j["kind"] = s.is_pure() ? "pure" : "mixed";
  j["n_max"] = s.cutoff().n_max;
  j["leakage_tol"] = s.cutoff().leakage_tol;
  j["leakage"] = s.leakage();
  j["descriptor"] = descriptor;
  if (s.is_pure()) {
    j["data"] = data_array(s.amplitudes().data(), s.amplitudes().size());
  } else {
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    RowMajor m = s.matrix();
    j["data"] = data_array(m.data(), m.size());
  }
  return j;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  bad("complex values are [re, im] pairs, numbers or literals like \"1+0.5i\"");
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto number = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      bad("cannot parse complex literal '" + std::string(text) + "'");
    }
    if (pos != t.size() || !std::isfinite(v))
      bad("cannot parse complex literal '" + std::string(text) + "'");
    return v;
  };
  if (s.empty()) bad("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') {
    if (s == "+" || s == "-") bad("cannot parse complex literal '" + std::string(text) + "'");
    return {number(s), 0.0};
  }
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(s)};
  std::string re = s.substr(0, split);
  if (re == "+" || re == "-") bad("cannot parse complex literal '" + std::string(text) + "'");
  return {number(re), number(s.substr(split))};
}

Json state_to_json(const SingleModeState& s, const Json& descriptor) {
  return state_json(s, 1, descriptor);
}

Json state_to_json(const JointState& s, const Json& descriptor) {
  return state_json(s, 2, descriptor);
}

LoadedState state_from_json(const Json& j) {
  try {
    if (!j.is_object() || j.value("format", std::string()) != "bsent-state")
      bad("not a bsent-state document");
    if (j.at("version").get<int>() != kStateFormatVersion) bad("unsupported state file version");
    const int modes = j.at("modes").get<int>();
    if (modes != 1 && modes != 2) bad("'modes' must be 1 or 2");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "pure" && kind != "mixed") bad("'kind' must be pure or mixed");
    CutoffConfig c = CutoffConfig::make(j.at("n_max").get<int>(), j.at("leakage_tol").get<double>());
    const double leakage = j.at("leakage").get<double>();
    const Json& data = j.at("data");
    const Eigen::Index d = modes == 1 ? c.dim() : c.joint_dim();
    const Eigen::Index expect = kind == "pure" ? d : d * d;
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != expect)
      bad("'data' has " + std::to_string(data.size()) + " entries, expected " + std::to_string(expect));
    std::vector<Complex> values;
    values.reserve(data.size());
    for (const Json& z : data) values.push_back(complex_from_json(z));
    LoadedState out;
    out.modes = modes;
    out.descriptor = j.value("descriptor", Json::object());
    if (kind == "pure") {
      Vector v = Eigen::Map<const Vector>(values.data(), d);
      if (modes == 1)
        out.single.push_back(SingleModeState::pure(std::move(v), c, leakage));
      else
        out.joint.push_back(JointState::pure(std::move(v), c, leakage));
    } else {
      using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      Matrix m = Eigen::Map<const RowMajor>(values.data(), d, d);
      if (modes == 1)
        out.single.push_back(SingleModeState::mixed(std::move(m), c, leakage));
      else
        out.joint.push_back(JointState::mixed(std::move(m), c, leakage));
    }
    return out;
  } catch (const Json::exception& e) {
    bad(std::string("malformed state file: ") + e.what());
  }
}

int descriptor_modes(const Json& d) {
  const std::string kind = kind_of(d);
  for (const char* k : {"fock", "coherent", "squeezed_vacuum", "displaced_squeezed", "displaced_fock",
                        "thermal"})
    if (kind == k) return 1;
  for (const char* k : {"product", "unpolarized", "laser_average", "displaced_number_mixture",
                        "matched_squeezed_pair", "coherent_mixture", "zero_entanglement_family"})
    if (kind == k) return 2;
  bad("unknown state kind '" + kind + "'");
}

SingleModeState build_single(const Json& d, const CutoffConfig& c) {
  const std::string kind = kind_of(d);
  try {
    if (kind == "fock") return fock(int_field(d, "n"), c);
    if (kind == "coherent") return coherent(complex_field(d, "alpha"), c);
    if (kind == "squeezed_vacuum") return squeezed_vacuum(complex_field(d, "gamma"), c);
    if (kind == "displaced_squeezed")
      return displaced_squeezed(complex_field_or(d, "alpha"), complex_field_or(d, "gamma"), c);
    if (kind == "displaced_fock") return displaced_fock(int_field(d, "n"), complex_field(d, "alpha"), c);
    if (kind == "thermal") return thermal(real_field(d, "nbar"), c);
  } catch (const Json::exception& e) {
    bad(std::string("malformed descriptor: ") + e.what());
  }
  if (descriptor_modes(d) == 2) bad("'" + kind + "' describes a two-mode state");
  bad("unknown state kind '" + kind + "'");
}

JointState build_joint(const Json& d, const CutoffConfig& c) {
  const std::string kind = kind_of(d);
  try {
    if (kind == "product") return tensor(build_single(field(d, "a"), c), build_single(field(d, "b"), c));
    if (kind == "unpolarized") return unpolarized(spec_from(d, c), c);
    if (kind == "laser_average") return laser_average(real_field(d, "intensity"), c);
    if (kind == "displaced_number_mixture")
      return displaced_number_mixture(int_field(d, "n"), complex_field_or(d, "alpha"),
                                      complex_field_or(d, "beta"), c);
    if (kind == "matched_squeezed_pair")
      return matched_squeezed_pair(complex_field_or(d, "alpha"), complex_field_or(d, "beta"),
                                   complex_field(d, "gamma"), real_field_or(d, "phi", 0.0), c);
    if (kind == "coherent_mixture") {
      std::vector<CoherentComponent> comps;
      for (const Json& x : field(d, "components"))
        comps.push_back({real_field(x, "weight"), complex_field_or(x, "alpha"), complex_field_or(x, "beta")});
      return classical_coherent_mixture(comps, c);
    }
    if (kind == "zero_entanglement_family") {
      std::vector<FamilySample> samples;
      for (const Json& x : field(d, "samples"))
        samples.push_back({real_field(x, "weight"), complex_field_or(x, "alpha"),
                           complex_field_or(x, "beta"), complex_field_or(x, "gamma"), spec_from(x, c)});
      return zero_entanglement_family(samples, real_field_or(d, "phi", 0.0), c);
    }
  } catch (const Json::exception& e) {
    bad(std::string("malformed descriptor: ") + e.what());
  }
  if (descriptor_modes(d) == 1) bad("'" + kind + "' describes a single-mode state");
  bad("unknown state kind '" + kind + "'");
}

Json report_to_json(const EntanglementReport& r) {
  Json j;
  j["e_p"] = r.e_p;
  if (r.schmidt_values) {
    Json v = Json::array();
    for (double x : *r.schmidt_values) v.push_back(x);
    j["schmidt_values"] = v;
  }
  if (r.schmidt_rank) j["schmidt_rank"] = *r.schmidt_rank;
  j["negativity"] = r.negativity;
  j["ppt"] = r.ppt;
  j["min_pt_eigenvalue"] = r.min_pt_eigenvalue;
  return j;
}

Json claim_to_json(const ClaimResult& r) {
  Json j;
  j["claim_id"] = r.claim_id;
  j["anchor"] = r.anchor;
  j["metric"] = r.metric;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  j["runtime_ms"] = r.runtime_ms;
  j["seed"] = r.seed;
  Json checks = Json::array();
  for (const SubCheck& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"metric", c.metric},
                      {"threshold", c.threshold},
                      {"bound", c.bound == Bound::at_most ? "at_most" : "at_least"},
                      {"pass", c.pass}});
  j["checks"] = checks;
  j["note"] = r.note;
  return j;
}

Json manifest_to_json(const std::vector<ClaimResult>& results) {
  Json a = Json::array();
  for (const ClaimResult& r : results) a.push_back(claim_to_json(r));
  return a;
}

VerifyConfig verify_config_from_json(const Json& j, VerifyConfig c) {
  if (!j.is_object()) bad("verify configuration must be an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "fd_step") c.fd_step = v.get<double>();
      else if (key == "pure_leakage_tol") c.pure_leakage_tol = v.get<double>();
      else if (key == "pure_cap") c.pure_cap = v.get<int>();
      else if (key == "mixed_leakage_tol") c.mixed_leakage_tol = v.get<double>();
      else if (key == "mixed_overflow_tol") c.mixed_overflow_tol = v.get<double>();
      else if (key == "mixed_cap") c.mixed_cap = v.get<int>();
      else if (key == "thermal_leakage_tol") c.thermal_leakage_tol = v.get<double>();
      else if (key == "grid_theta") c.grid_theta = v.get<int>();
      else if (key == "grid_phi") c.grid_phi = v.get<int>();
      else if (key == "random_angles") c.random_angles = v.get<int>();
      else if (key == "uniqueness_samples") c.uniqueness_samples = v.get<int>();
      else if (key == "coherent_samples") c.coherent_samples = v.get<int>();
      else if (key == "tolerances") {
        for (const auto& [tk, tv] : v.items()) {
          if (tk == "herm") c.tol.herm = tv.get<double>();
          else if (tk == "psd") c.tol.psd = tv.get<double>();
          else if (tk == "unitary") c.tol.unitary = tv.get<double>();
          else if (tk == "eq") c.tol.eq = tv.get<double>();
          else bad("unknown tolerance '" + tk + "'");
        }
      } else {
        bad("unknown verify setting '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    bad(std::string("malformed verify configuration: ") + e.what());
  }
  c.check();
  return c;
}

}  // namespace bsent
