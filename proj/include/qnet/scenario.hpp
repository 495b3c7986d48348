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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnet/model.hpp"
#include "qnet/noise.hpp"

namespace qnet {

/// Node encoding block of a scenario file: a named generator or an explicit
/// Hermitian matrix literal, plus integer node weights.
struct EncodingSpec {
  std::string generator_label;  // "sigma_z_half" or "custom"
  CMatrix generator;
  std::vector<int> weights;  // one per node, ≥ 1
};

struct InitialStateSpec {
  enum class Kind { ghz, weighted_eigen, mixed, matrix };
  Kind kind = Kind::ghz;
  Complex alpha{1.0 / 1.4142135623730951, 0.0};
  Complex beta{1.0 / 1.4142135623730951, 0.0};
  std::vector<Complex> coeffs;  // weighted_eigen amplitudes, ascending-eigenvalue order
  double gamma0 = 1.0;          // mixed: GHZ weight
  std::vector<std::pair<std::string, double>> diagonal;  // mixed: basis string → γ
  CMatrix matrix;               // explicit density matrix literal
};

struct NoiseSpec {
  std::string channel;   // dephasing | depolarizing | amplitude_damping | erasure
  std::string locality;  // per_node | global_map
  NoiseStage stage = NoiseStage::after_sampling;
  std::vector<double> etas;  // ascending
};

/// One experiment description, loaded from a JSON file. Each file holds a
/// single scenario.
struct Scenario {
  std::string name;
  std::string task;  // analyze | noise_sweep | simulate | certify
  int d = 0;
  EncodingSpec encoding;
  InitialStateSpec initial_state;
  ParamVector theta;
  WeightVector w;  // defaults to the encoding weights
  std::optional<std::string> povm;  // "x_basis"
  std::optional<NoiseSpec> noise;
  std::vector<std::string> conditions;  // certify: subset of checks (empty = auto)
  double privacy_tol = default_tol().privacy;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  int repetitions = 0;
};

/// Parses and cross-validates a scenario document; any violation throws
/// ArgumentError naming the offending field.
Scenario parse_scenario(const nlohmann::json& doc);

/// Reads a scenario file (I/O or JSON syntax errors throw ArgumentError).
Scenario load_scenario(const std::string& path);

/// Canonical echo of the effective scenario for reports.
nlohmann::json scenario_to_json(const Scenario& s);

/// Instantiates the network model (encoding + probe) of a scenario.
NetworkModel build_model(const Scenario& s);

/// Builds the scenario's noise channel at one strength. Erasure requires
/// the embedded model from embed_for_erasure.
NoiseChannel build_channel(const NoiseSpec& spec, double eta);

}  // namespace qnet
