// Copyright 2026 The qnet-privacy Authors
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

#include "qnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "qnet/analysis.hpp"
#include "qnet/protocol.hpp"

namespace qnet {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ArgumentError("scenario field '" + path + "': " + what);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
  }
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  const json* v = find(obj, key);
  if (v == nullptr) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *v;
}

std::string sub(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Complex as_complex(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(path, "expected a complex number as [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

CMatrix as_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  CMatrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = v[r];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.empty()) fail(rp, "expected a non-empty row array");
    if (r == 0) {
      cols = row.size();
      m.resize(static_cast<long>(rows), static_cast<long>(cols));
    } else if (row.size() != cols) {
      fail(rp, "row length differs from row 0");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<long>(r), static_cast<long>(c)) =
          as_complex(row[c], rp + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

std::vector<double> as_number_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

EncodingSpec parse_encoding(const json* block, int d) {
  EncodingSpec spec;
  spec.weights.assign(static_cast<std::size_t>(d), 1);
  if (block == nullptr) {
    spec.generator_label = "sigma_z_half";
    spec.generator = sigma_z_half();
    return spec;
  }
  const json& b = *block;
  if (!b.is_object()) fail("encoding", "expected an object");
  check_keys(b, "encoding", {"generator", "generator_matrix", "weights"});
  const json* label = find(b, "generator");
  const json* matrix = find(b, "generator_matrix");
  if (label != nullptr && matrix != nullptr) {
    fail("encoding", "give either 'generator' or 'generator_matrix', not both");
  }
  if (matrix != nullptr) {
    spec.generator_label = "custom";
    spec.generator = as_matrix(*matrix, "encoding.generator_matrix");
    if (spec.generator.rows() != spec.generator.cols() || spec.generator.rows() < 2) {
      fail("encoding.generator_matrix", "expected a square matrix of dimension >= 2");
    }
    const double herm =
        (spec.generator - spec.generator.adjoint()).cwiseAbs().maxCoeff();
    if (herm > default_tol().hermitian) {
      fail("encoding.generator_matrix", "matrix is not Hermitian");
    }
  } else {
    const std::string name =
        label == nullptr ? "sigma_z_half" : as_string(*label, "encoding.generator");
    if (name != "sigma_z_half") {
      fail("encoding.generator", "unknown generator '" + name +
                                     "' (supported: sigma_z_half, or give "
                                     "generator_matrix)");
    }
    spec.generator_label = name;
    spec.generator = sigma_z_half();
  }
  if (const json* w = find(b, "weights")) {
    if (!w->is_array() || static_cast<int>(w->size()) != d) {
      fail("encoding.weights", "expected an array of " + std::to_string(d) + " integers");
    }
    for (std::size_t i = 0; i < w->size(); ++i) {
      const std::string p = "encoding.weights[" + std::to_string(i) + "]";
      const long wi = as_integer((*w)[i], p);
      if (wi < 1) fail(p, "node weights must be >= 1");
      spec.weights[i] = static_cast<int>(wi);
    }
  }
  return spec;
}

InitialStateSpec parse_initial_state(const json* block, const EncodingSpec& enc) {
  InitialStateSpec spec;
  if (block == nullptr) return spec;  // balanced GHZ default
  const json& b = *block;
  if (!b.is_object()) fail("initial_state", "expected an object");
  const std::string kind = as_string(require(b, "initial_state", "kind"),
                                     "initial_state.kind");
  const long n = enc.generator.rows();
  if (kind == "ghz" || kind == "mixed") {
    spec.kind = kind == "ghz" ? InitialStateSpec::Kind::ghz : InitialStateSpec::Kind::mixed;
    check_keys(b, "initial_state",
               kind == "ghz" ? std::set<std::string>{"kind", "alpha", "beta"}
                             : std::set<std::string>{"kind", "alpha", "beta", "gamma0",
                                                     "diagonal"});
    if (const json* a = find(b, "alpha")) spec.alpha = as_complex(*a, "initial_state.alpha");
    if (const json* bb = find(b, "beta")) spec.beta = as_complex(*bb, "initial_state.beta");
    const double norm = std::norm(spec.alpha) + std::norm(spec.beta);
    if (std::abs(norm - 1.0) > 1e-8) {
      fail("initial_state", "alpha/beta must satisfy |alpha|^2 + |beta|^2 = 1");
    }
    if (kind == "mixed") {
      if (n != 2) fail("initial_state", "mixed states require a 2-dimensional generator");
      spec.gamma0 = as_number(require(b, "initial_state", "gamma0"), "initial_state.gamma0");
      const json& diag = require(b, "initial_state", "diagonal");
      if (!diag.is_array()) fail("initial_state.diagonal", "expected an array");
      double total = spec.gamma0;
      for (std::size_t i = 0; i < diag.size(); ++i) {
        const std::string p = "initial_state.diagonal[" + std::to_string(i) + "]";
        if (!diag[i].is_object()) fail(p, "expected an object {basis, gamma}");
        check_keys(diag[i], p, {"basis", "gamma"});
        const std::string basis = as_string(require(diag[i], p, "basis"), p + ".basis");
        const double gamma = as_number(require(diag[i], p, "gamma"), p + ".gamma");
        if (gamma < 0.0) fail(p + ".gamma", "mixture weights must be >= 0");
        total += gamma;
        spec.diagonal.emplace_back(basis, gamma);
      }
      if (spec.gamma0 < 0.0) fail("initial_state.gamma0", "mixture weights must be >= 0");
      if (std::abs(total - 1.0) > 1e-8) {
        fail("initial_state", "gamma0 plus the diagonal weights must sum to 1");
      }
    }
  } else if (kind == "weighted_eigen") {
    spec.kind = InitialStateSpec::Kind::weighted_eigen;
    check_keys(b, "initial_state", {"kind", "coeffs"});
    const json& coeffs = require(b, "initial_state", "coeffs");
    if (!coeffs.is_array() || coeffs.empty() || static_cast<long>(coeffs.size()) > n) {
      fail("initial_state.coeffs",
           "expected between 1 and " + std::to_string(n) + " complex amplitudes");
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const Complex c =
          as_complex(coeffs[i], "initial_state.coeffs[" + std::to_string(i) + "]");
      norm += std::norm(c);
      spec.coeffs.push_back(c);
    }
    if (std::abs(norm - 1.0) > 1e-8) {
      fail("initial_state.coeffs", "amplitudes must satisfy sum |c_i|^2 = 1");
    }
  } else if (kind == "matrix") {
    spec.kind = InitialStateSpec::Kind::matrix;
    check_keys(b, "initial_state", {"kind", "matrix"});
    spec.matrix = as_matrix(require(b, "initial_state", "matrix"), "initial_state.matrix");
  } else {
    fail("initial_state.kind",
         "unknown kind '" + kind + "' (supported: ghz, weighted_eigen, mixed, matrix)");
  }
  return spec;
}

NoiseSpec parse_noise(const json& b) {
  NoiseSpec spec;
  if (!b.is_object()) fail("noise", "expected an object");
  check_keys(b, "noise", {"channel", "locality", "stage", "eta"});
  spec.channel = as_string(require(b, "noise", "channel"), "noise.channel");
  const std::set<std::string> channels{"dephasing", "depolarizing", "amplitude_damping",
                                       "erasure"};
  if (!channels.count(spec.channel)) {
    fail("noise.channel", "unknown channel '" + spec.channel +
                              "' (supported: dephasing, depolarizing, "
                              "amplitude_damping, erasure)");
  }
  spec.locality = spec.channel == "depolarizing" ? "global_map" : "per_node";
  if (const json* loc = find(b, "locality")) {
    spec.locality = as_string(*loc, "noise.locality");
    if (spec.locality != "per_node" && spec.locality != "global_map") {
      fail("noise.locality", "expected 'per_node' or 'global_map'");
    }
    if (spec.locality == "global_map" && spec.channel != "depolarizing") {
      fail("noise.locality", "global_map is only defined for depolarizing");
    }
  }
  if (const json* stage = find(b, "stage")) {
    const std::string s = as_string(*stage, "noise.stage");
    if (s == "before_sampling") {
      spec.stage = NoiseStage::before_sampling;
    } else if (s == "after_sampling") {
      spec.stage = NoiseStage::after_sampling;
    } else {
      fail("noise.stage", "expected 'before_sampling' or 'after_sampling'");
    }
  }
  spec.etas = as_number_list(require(b, "noise", "eta"), "noise.eta");
  if (spec.etas.empty()) fail("noise.eta", "expected at least one strength");
  for (std::size_t i = 0; i < spec.etas.size(); ++i) {
    if (spec.etas[i] < 0.0 || spec.etas[i] > 1.0) {
      fail("noise.eta[" + std::to_string(i) + "]", "strengths must lie in [0, 1]");
    }
  }
  std::sort(spec.etas.begin(), spec.etas.end());
  return spec;
}

json complex_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ArgumentError("scenario document must be a JSON object");
  check_keys(doc, "",
             {"name", "task", "d", "encoding", "initial_state", "theta", "w", "povm",
              "noise", "conditions", "tolerances", "seed", "shots", "repetitions"});

  Scenario s;
  if (const json* name = find(doc, "name")) s.name = as_string(*name, "name");

  s.task = as_string(require(doc, "", "task"), "task");
  const std::set<std::string> tasks{"analyze", "noise_sweep", "simulate", "certify"};
  if (!tasks.count(s.task)) {
    fail("task", "unknown task '" + s.task +
                     "' (supported: analyze, noise_sweep, simulate, certify)");
  }

  const long d = as_integer(require(doc, "", "d"), "d");
  if (d < 1 || d > 62) fail("d", "node count must lie in [1, 62]");
  s.d = static_cast<int>(d);

  s.encoding = parse_encoding(find(doc, "encoding"), s.d);
  s.initial_state = parse_initial_state(find(doc, "initial_state"), s.encoding);

  s.theta = as_number_list(require(doc, "", "theta"), "theta");
  if (static_cast<int>(s.theta.size()) != s.d) {
    fail("theta", "expected " + std::to_string(s.d) + " parameter values");
  }

  if (const json* w = find(doc, "w")) {
    s.w = as_number_list(*w, "w");
    if (static_cast<int>(s.w.size()) != s.d) {
      fail("w", "expected " + std::to_string(s.d) + " entries");
    }
    if (std::all_of(s.w.begin(), s.w.end(), [](double x) { return x == 0.0; })) {
      fail("w", "the target function must be nonzero");
    }
  } else {
    s.w.assign(s.encoding.weights.begin(), s.encoding.weights.end());
  }

  if (const json* povm = find(doc, "povm")) {
    const std::string p = as_string(*povm, "povm");
    if (p != "x_basis") fail("povm", "unknown POVM '" + p + "' (supported: x_basis)");
    s.povm = p;
  }

  if (const json* noise = find(doc, "noise")) s.noise = parse_noise(*noise);
  if (s.task == "noise_sweep" && !s.noise.has_value()) {
    fail("noise", "noise_sweep requires a noise block");
  }

  if (const json* conds = find(doc, "conditions")) {
    if (!conds->is_array()) fail("conditions", "expected an array of check names");
    const std::set<std::string> known{"rank_one", "derivative_norm", "unitary", "average"};
    for (std::size_t i = 0; i < conds->size(); ++i) {
      const std::string p = "conditions[" + std::to_string(i) + "]";
      const std::string c = as_string((*conds)[i], p);
      if (!known.count(c)) {
        fail(p, "unknown check '" + c +
                    "' (supported: rank_one, derivative_norm, unitary, average)");
      }
      s.conditions.push_back(c);
    }
  }

  if (const json* tols = find(doc, "tolerances")) {
    if (!tols->is_object()) fail("tolerances", "expected an object");
    check_keys(*tols, "tolerances", {"privacy"});
    if (const json* p = find(*tols, "privacy")) {
      s.privacy_tol = as_number(*p, "tolerances.privacy");
      if (!(s.privacy_tol > 0.0)) fail("tolerances.privacy", "must be > 0");
    }
  }

  if (const json* seed = find(doc, "seed")) {
    const long v = as_integer(*seed, "seed");
    if (v < 0) fail("seed", "must be >= 0");
    s.seed = static_cast<std::uint64_t>(v);
  }
  if (const json* shots = find(doc, "shots")) {
    const long v = as_integer(*shots, "shots");
    if (v < 1) fail("shots", "must be >= 1");
    s.shots = static_cast<std::uint64_t>(v);
  }
  if (const json* reps = find(doc, "repetitions")) {
    const long v = as_integer(*reps, "repetitions");
    if (v < 1) fail("repetitions", "must be >= 1");
    s.repetitions = static_cast<int>(v);
  }
  if (s.task == "simulate") {
    if (s.shots == 0) fail("shots", "simulate requires a shot count");
    if (s.repetitions == 0) fail("repetitions", "simulate requires a repetition count");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read scenario file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ArgumentError("scenario file " + path + " is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

json scenario_to_json(const Scenario& s) {
  json out;
  if (!s.name.empty()) out["name"] = s.name;
  out["task"] = s.task;
  out["d"] = s.d;

  json enc;
  enc["generator"] = s.encoding.generator_label;
  if (s.encoding.generator_label == "custom") {
    enc["generator_matrix"] = matrix_json(s.encoding.generator);
  }
  enc["weights"] = s.encoding.weights;
  out["encoding"] = enc;

  json init;
  switch (s.initial_state.kind) {
    case InitialStateSpec::Kind::ghz:
      init["kind"] = "ghz";
      init["alpha"] = complex_json(s.initial_state.alpha);
      init["beta"] = complex_json(s.initial_state.beta);
      break;
    case InitialStateSpec::Kind::weighted_eigen: {
      init["kind"] = "weighted_eigen";
      json coeffs = json::array();
      for (const Complex& c : s.initial_state.coeffs) coeffs.push_back(complex_json(c));
      init["coeffs"] = coeffs;
      break;
    }
    case InitialStateSpec::Kind::mixed: {
      init["kind"] = "mixed";
      init["alpha"] = complex_json(s.initial_state.alpha);
      init["beta"] = complex_json(s.initial_state.beta);
      init["gamma0"] = s.initial_state.gamma0;
      json diag = json::array();
      for (const auto& [basis, gamma] : s.initial_state.diagonal) {
        diag.push_back(json{{"basis", basis}, {"gamma", gamma}});
      }
      init["diagonal"] = diag;
      break;
    }
    case InitialStateSpec::Kind::matrix:
      init["kind"] = "matrix";
      init["matrix"] = matrix_json(s.initial_state.matrix);
      break;
  }
  out["initial_state"] = init;

  out["theta"] = s.theta;
  out["w"] = s.w;
  if (s.povm.has_value()) out["povm"] = *s.povm;
  if (s.noise.has_value()) {
    json n;
    n["channel"] = s.noise->channel;
    n["locality"] = s.noise->locality;
    n["stage"] = s.noise->stage == NoiseStage::before_sampling ? "before_sampling"
                                                               : "after_sampling";
    n["eta"] = s.noise->etas;
    out["noise"] = n;
  }
  if (!s.conditions.empty()) out["conditions"] = s.conditions;
  out["tolerances"] = json{{"privacy", s.privacy_tol}};
  out["seed"] = s.seed;
  if (s.shots > 0) out["shots"] = s.shots;
  if (s.repetitions > 0) out["repetitions"] = s.repetitions;
  return out;
}

NetworkModel build_model(const Scenario& s) {
  const CMatrix& h = s.encoding.generator;
  const long n = h.rows();
  const int total_slots =
      std::accumulate(s.encoding.weights.begin(), s.encoding.weights.end(), 0);
  NodeDims dims(std::vector<int>(static_cast<std::size_t>(total_slots),
                                 static_cast<int>(n)));

  DensityState probe = [&]() -> DensityState {
    switch (s.initial_state.kind) {
      case InitialStateSpec::Kind::ghz: {
        // α on the all-zeros digit string, β on the all-ones digit string.
        CVector v = CVector::Zero(dims.total());
        long idx1 = 0;
        for (int k = 0; k < total_slots; ++k) idx1 = idx1 * n + 1;
        v(0) = s.initial_state.alpha;
        v(idx1) = s.initial_state.beta;
        return DensityState::from_vector(v, dims);
      }
      case InitialStateSpec::Kind::weighted_eigen:
        return weighted_eigen_state(s.encoding.weights, s.initial_state.coeffs,
                                    eig_hermitian(h).eigenvectors);
      case InitialStateSpec::Kind::mixed: {
        const DensityState ghz =
            ghz_state(total_slots, s.initial_state.alpha, s.initial_state.beta);
        std::vector<std::pair<long, double>> diag;
        for (const auto& [basis, gamma] : s.initial_state.diagonal) {
          if (static_cast<int>(basis.size()) != total_slots) {
            throw ArgumentError("scenario field 'initial_state.diagonal': basis string '" +
                                basis + "' must have one digit per tensor slot (" +
                                std::to_string(total_slots) + ")");
          }
          long idx = 0;
          for (char c : basis) {
            if (c < '0' || c >= '0' + n) {
              throw ArgumentError(
                  "scenario field 'initial_state.diagonal': invalid digit in basis "
                  "string '" +
                  basis + "'");
            }
            idx = idx * n + (c - '0');
          }
          diag.emplace_back(idx, gamma);
        }
        return mixed_private_state(s.initial_state.gamma0, ghz, diag);
      }
      case InitialStateSpec::Kind::matrix:
        return DensityState(s.initial_state.matrix, dims);
    }
    throw ArgumentError("unhandled initial state kind");
  }();

  std::vector<EncodingMap> nodes;
  nodes.reserve(static_cast<std::size_t>(s.d));
  for (int mu = 0; mu < s.d; ++mu) {
    nodes.push_back(MultiplicativeUnitary{h, s.encoding.weights[static_cast<std::size_t>(mu)]});
  }
  return NetworkModel(std::move(nodes), std::move(probe));
}

NoiseChannel build_channel(const NoiseSpec& spec, double eta) {
  if (spec.channel == "dephasing") return dephasing(eta);
  if (spec.channel == "amplitude_damping") return amplitude_damping(eta);
  if (spec.channel == "erasure") return erasure(eta);
  if (spec.channel == "depolarizing") {
    return spec.locality == "global_map" ? depolarizing_global(eta) : depolarizing(eta);
  }
  throw ArgumentError("unknown noise channel: " + spec.channel);
}

}  // namespace qnet
