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

#include "bsent/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bsent/entanglement.hpp"
#include "bsent/optics.hpp"
#include "bsent/states.hpp"

namespace bsent::cli {

namespace {

struct Options {
  std::optional<int> nmax;
  std::optional<double> leakage_tol;
  std::optional<std::string> out;
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;

  std::optional<std::string> kind;
  std::optional<int> n;
  std::optional<std::string> alpha, beta, gamma;
  std::optional<double> nbar;
  std::optional<int> sector;
  std::optional<std::string> lambda;
  std::optional<double> intensity;
  std::optional<std::string> a, b;
  std::optional<std::string> in;

  std::optional<double> theta, phi;
  std::optional<double> theta_min, theta_max;
  std::optional<int> steps;
  std::optional<std::string> claims;

  Json cfg = Json::object();
};

template <class T>
T pick(const std::optional<T>& flag, const Json& cfg, const char* key, T fallback) {
  if (flag) return *flag;
  if (cfg.contains(key)) {
    try {
      return cfg.at(key).get<T>();
    } catch (const Json::exception&) {
      throw ConfigurationError(std::string("config key '") + key + "' has the wrong type");
    }
  }
  return fallback;
}

template <class T>
std::optional<T> pick_opt(const std::optional<T>& flag, const Json& cfg, const char* key) {
  if (flag) return flag;
  if (cfg.contains(key)) return pick<T>(flag, cfg, key, T{});
  return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

Json parse_value(const std::string& key, const std::string& v) {
  if (key == "n" || key == "sector") {
    std::size_t pos = 0;
    int x = 0;
    try {
      x = std::stoi(v, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != v.size() || v.empty()) throw ConfigurationError("'" + key + "' needs an integer");
    return x;
  }
  if (key == "lambda") {
    Json a = Json::array();
    for (const std::string& x : split(v, '/')) a.push_back(parse_complex(x).real());
    return a;
  }
  if (key == "alpha" || key == "beta" || key == "gamma") return complex_to_json(parse_complex(v));
  Complex z = parse_complex(v);
  if (z.imag() != 0.0) throw ConfigurationError("'" + key + "' must be real");
  return z.real();
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot open '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw ConfigurationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  auto path = pick_opt(o.out, o.cfg, "out");
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path);
  if (!f) throw ConfigurationError("cannot write '" + *path + "'");
  f << text;
  if (!f) throw ConfigurationError("failed writing '" + *path + "'");
}

double leakage_tol(const Options& o) { return pick(o.leakage_tol, o.cfg, "leakage_tol", 1e-12); }

// Descriptor assembled from --kind and parameter flags, else from the config.
std::optional<Json> descriptor_from_flags(const Options& o) {
  if (!o.kind) {
    if (o.cfg.contains("state")) return o.cfg.at("state");
    return std::nullopt;
  }
  Json d;
  d["kind"] = *o.kind;
  if (o.n) d["n"] = *o.n;
  if (o.alpha) d["alpha"] = complex_to_json(parse_complex(*o.alpha));
  if (o.beta) d["beta"] = complex_to_json(parse_complex(*o.beta));
  if (o.gamma) d["gamma"] = complex_to_json(parse_complex(*o.gamma));
  if (o.nbar) d["nbar"] = *o.nbar;
  if (o.sector) d["sector"] = *o.sector;
  if (o.lambda) {
    Json a = Json::array();
    for (const std::string& x : split(*o.lambda, ',')) a.push_back(parse_complex(x).real());
    d["lambda"] = a;
  }
  if (o.intensity) d["intensity"] = *o.intensity;
  if (o.phi) d["phi"] = *o.phi;
  if (o.a) d["a"] = descriptor_from_text(*o.a);
  if (o.b) d["b"] = descriptor_from_text(*o.b);
  return d;
}

template <class Build>
auto with_cutoff(const Options& o, Build&& build) -> decltype(build(CutoffConfig{})) {
  const double tol = leakage_tol(o);
  if (auto n = pick_opt(o.nmax, o.cfg, "nmax")) return build(CutoffConfig::make(*n, tol));
  return select_cutoff(build, tol, kAutoCutoffCap);
}

struct JointInput {
  JointState state;
  Json descriptor;
};

JointInput joint_input(const Options& o) {
  if (auto path = pick_opt(o.in, o.cfg, "in")) {
    LoadedState s = state_from_json(read_json_file(*path));
    if (s.modes != 2) throw ConfigurationError("'" + *path + "' holds a single-mode state");
    return {s.joint.front(), s.descriptor};
  }
  std::optional<Json> d = descriptor_from_flags(o);
  if (!d && (o.a || o.b || o.cfg.contains("a") || o.cfg.contains("b"))) {
    Json a = o.a ? descriptor_from_text(*o.a) : o.cfg.value("a", Json());
    Json b = o.b ? descriptor_from_text(*o.b) : o.cfg.value("b", Json());
    if (a.is_null() || b.is_null()) throw ConfigurationError("a product input needs both --a and --b");
    d = Json{{"kind", "product"}, {"a", a}, {"b", b}};
  }
  if (!d) throw ConfigurationError("no input state: give --in, --kind or --a/--b");
  if (descriptor_modes(*d) != 2) throw ConfigurationError("a two-mode input state is required");
  const Json desc = *d;
  return {with_cutoff(o, [&](const CutoffConfig& c) { return build_joint(desc, c); }), desc};
}

BeamSplitterParams bs_params(const Options& o) {
  return BeamSplitterParams::make(pick(o.theta, o.cfg, "theta", 0.0), pick(o.phi, o.cfg, "phi", 0.0));
}

int cmd_state(const Options& o, std::ostream& out) {
  std::optional<Json> d = descriptor_from_flags(o);
  if (!d) throw ConfigurationError("state needs --kind or a 'state' descriptor in the config");
  const Json desc = *d;
  Json doc;
  if (descriptor_modes(desc) == 1)
    doc = state_to_json(with_cutoff(o, [&](const CutoffConfig& c) { return build_single(desc, c); }), desc);
  else
    doc = state_to_json(with_cutoff(o, [&](const CutoffConfig& c) { return build_joint(desc, c); }), desc);
  emit(o, doc.dump() + "\n", out);
  return kExitOk;
}

int cmd_apply(const Options& o, std::ostream& out) {
  JointInput in = joint_input(o);
  BeamSplitterParams p = bs_params(o);
  JointState res = apply_bs(in.state, p);
  Json desc{{"kind", "beam_splitter_output"}, {"theta", p.theta}, {"phi", p.phi}, {"input", in.descriptor}};
  emit(o, state_to_json(res, desc).dump() + "\n", out);
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  JointInput in = joint_input(o);
  JointState s = in.state;
  if (pick_opt(o.theta, o.cfg, "theta")) s = apply_bs(s, bs_params(o));
  Json j = report_to_json(report(s));
  j["n_max"] = s.cutoff().n_max;
  j["leakage"] = s.leakage();
  j["state_kind"] = s.is_pure() ? "pure" : "mixed";
  emit(o, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const double lo = pick(o.theta_min, o.cfg, "theta_min", 0.0);
  const double hi = pick(o.theta_max, o.cfg, "theta_max", 0.2);
  const int steps = pick(o.steps, o.cfg, "steps", 21);
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo))
    throw ConfigurationError("sweep needs theta_max > theta_min");
  if (steps < 2) throw ConfigurationError("sweep needs at least 2 steps");
  const double phi = pick(o.phi, o.cfg, "phi", 0.0);
  JointInput in = joint_input(o);
  auto basis = std::make_shared<const SectorBasis>(in.state.cutoff());
  std::ostringstream csv;
  csv << kSweepVersionLine << "\n" << kSweepHeader << "\n" << std::setprecision(17);
  for (int k = 0; k < steps; ++k) {
    const double theta = k == steps - 1 ? hi : lo + (hi - lo) * k / (steps - 1);
    JointState s = BeamSplitter(BeamSplitterParams{theta, phi}, basis).apply(in.state);
    EntanglementReport r = report(s);
    csv << theta << "," << r.e_p << "," << r.negativity << "," << r.min_pt_eigenvalue + 0.0 << "\n";
  }
  emit(o, csv.str(), out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyConfig vc;
  if (o.cfg.contains("verify")) vc = verify_config_from_json(o.cfg.at("verify"));
  vc.seed = pick(o.seed, o.cfg, "seed", vc.seed);
  vc.check();
  std::vector<std::string> ids;
  if (auto claims = pick_opt(o.claims, o.cfg, "claims"))
    for (const std::string& id : split(*claims, ','))
      if (!id.empty()) ids.push_back(id);
  std::vector<ClaimResult> results = run_all(vc, ids);
  int failed = 0;
  for (const ClaimResult& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.claim_id << "  metric=" << std::setprecision(6) << r.metric
        << " threshold=" << r.threshold << "  (" << r.runtime_ms << " ms)\n";
    if (!r.pass) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " claims passed\n";
  if (auto path = pick_opt(o.out, o.cfg, "out")) {
    std::ofstream f(*path);
    if (!f) throw ConfigurationError("cannot write '" + *path + "'");
    f << manifest_to_json(results).dump(2) << "\n";
  }
  return failed == 0 ? kExitOk : kExitClaimFailure;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--nmax", o.nmax, "Photon-number cutoff per mode (default: smallest meeting --leakage-tol)");
  cmd->add_option("--leakage-tol", o.leakage_tol, "Truncation leakage tolerance (default 1e-12)");
  cmd->add_option("--out", o.out, "Output file (default: standard output)");
  cmd->add_option("--config", o.config, "JSON configuration; flags take precedence");
  cmd->add_option("--seed", o.seed, "Random seed");
}

void add_state_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--kind", o.kind, "State kind, e.g. fock, coherent, thermal, unpolarized, product");
  cmd->add_option("--n", o.n, "Photon number (fock, displaced_fock, displaced_number_mixture)");
  cmd->add_option("--alpha", o.alpha, "Displacement of mode a, e.g. 1+0.5i");
  cmd->add_option("--beta", o.beta, "Displacement of mode b");
  cmd->add_option("--gamma", o.gamma, "Squeeze parameter");
  cmd->add_option("--nbar", o.nbar, "Mean thermal occupation");
  cmd->add_option("--sector", o.sector, "Single unpolarized sector N");
  cmd->add_option("--lambda", o.lambda, "Unpolarized weights lambda_0,lambda_1,...");
  cmd->add_option("--intensity", o.intensity, "Laser-average intensity |alpha|^2");
  cmd->add_option("--a", o.a, "Mode-a descriptor for products");
  cmd->add_option("--b", o.b, "Mode-b descriptor for products");
}

}  // namespace

Json descriptor_from_text(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t\n");
  if (first != std::string::npos && s[first] == '{') {
    try {
      return Json::parse(s);
    } catch (const Json::exception& e) {
      throw ConfigurationError(std::string("descriptor is not valid JSON: ") + e.what());
    }
  }
  Json d;
  const auto colon = s.find(':');
  d["kind"] = s.substr(0, colon);
  if (d["kind"].get<std::string>().empty()) throw ConfigurationError("descriptor needs a kind");
  if (colon == std::string::npos) return d;
  for (const std::string& kv : split(s.substr(colon + 1), ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigurationError("descriptor entries are key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    d[key] = parse_value(key, kv.substr(eq + 1));
  }
  return d;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beam-splitter entanglement toolkit", "bsent"};
  app.require_subcommand(1);
  Options o;

  CLI::App* state = app.add_subcommand("state", "Build a state and write it as JSON");
  add_common(state, o);
  add_state_flags(state, o);
  state->add_option("--phi", o.phi, "Phase for matched_squeezed_pair");

  CLI::App* apply = app.add_subcommand("apply", "Apply a beam splitter to a two-mode state");
  add_common(apply, o);
  add_state_flags(apply, o);
  apply->add_option("--in", o.in, "Input state file");
  apply->add_option("--theta", o.theta, "Rotation angle theta (radians)");
  apply->add_option("--phi", o.phi, "Phase phi (radians)");

  CLI::App* rep = app.add_subcommand("report", "Entanglement report of a two-mode state");
  add_common(rep, o);
  add_state_flags(rep, o);
  rep->add_option("--in", o.in, "Input state file");
  rep->add_option("--theta", o.theta, "Apply a beam splitter first");
  rep->add_option("--phi", o.phi, "Phase phi (radians)");

  CLI::App* sweep = app.add_subcommand("sweep", "Entanglement versus theta as CSV");
  add_common(sweep, o);
  add_state_flags(sweep, o);
  sweep->add_option("--in", o.in, "Input state file");
  sweep->add_option("--theta-min", o.theta_min, "First theta (default 0)");
  sweep->add_option("--theta-max", o.theta_max, "Last theta (default 0.2)");
  sweep->add_option("--steps", o.steps, "Number of theta values, >= 2 (default 21)");
  sweep->add_option("--phi", o.phi, "Phase phi (radians)");

  CLI::App* verify = app.add_subcommand("verify", "Run the claim checks and write a manifest");
  add_common(verify, o);
  verify->add_option("--claims", o.claims, "Comma-separated claim ids (default: all)");

  std::vector<const char*> argv{"bsent"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (o.config) o.cfg = read_json_file(*o.config);
    if (!o.cfg.is_object()) throw ConfigurationError("the configuration must be a JSON object");
    if (state->parsed()) return cmd_state(o, out);
    if (apply->parsed()) return cmd_apply(o, out);
    if (rep->parsed()) return cmd_report(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    return cmd_verify(o, out);
  } catch (const CutoffError& e) {
    err << "cutoff error: " << e.what() << "\n";
    return kExitCutoff;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace bsent::cli
