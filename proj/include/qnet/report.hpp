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

#include <string>

#include <json.hpp>

#include "qnet/scenario.hpp"

namespace qnet {

/// The task runners produce the full report document {tool, scenario,
/// results}. Reports are deterministic: rerunning a scenario (same seed)
/// yields byte-identical JSON. Wall-clock timing is *not* part of the
/// report; callers that want it attach a separate top-level "timing" key,
/// which comparisons must strip.

/// Fisher matrices, privacy verdicts, continuity spot checks, and the CRB
/// of the scenario's model at its parameter point.
nlohmann::json run_analyze(const Scenario& s);

/// ε-privacy, fidelity, GHZ coherence, and the privacy verdict per noise
/// strength (ascending).
nlohmann::json run_noise_sweep(const Scenario& s);

/// Monte-Carlo mean-estimation run of the GHZ parity protocol.
nlohmann::json run_simulate(const Scenario& s);

/// Runs the selected (or automatically applicable) privacy checks; when
/// all_passed is non-null it receives the conjunction of the verdicts.
nlohmann::json run_certify(const Scenario& s, bool* all_passed = nullptr);

/// Dispatch on s.task. certify_passed is only written for certify tasks.
nlohmann::json run_scenario(const Scenario& s, bool* certify_passed = nullptr);

/// CSV rendering of a noise-sweep report: header line
/// eta,epsilon,epsilon_bound,fidelity,coherence_abs,verdict then one row
/// per strength, LF line endings.
std::string sweep_csv(const nlohmann::json& report);

}  // namespace qnet
