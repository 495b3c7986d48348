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
#include <vector>

#include "qnet/model.hpp"
#include "qnet/privacy.hpp"
#include "qnet/qcore.hpp"

namespace qnet {

/// Local noise channel with strength eta. `per_node` channels carry an
/// explicit Kraus set applied on each targeted slot; `global_map` channels
/// act on the whole register at once (only global depolarizing,
/// (1−η)ρ + η·Tr(ρ)·1/dim, is defined).
struct NoiseChannel {
  enum class Locality { per_node, global_map };

  NoiseChannel(std::vector<CMatrix> kraus, double eta, Locality locality,
               std::string name, const Tolerances& tol = default_tol());

  std::vector<CMatrix> kraus;
  double eta = 0.0;
  Locality locality = Locality::per_node;
  std::string name;
};

/// Where noise acts relative to the parameter encoding.
enum class NoiseStage { before_sampling, after_sampling };

/// Split of an amplitude-damped GHZ-type state into the four-corner
/// coherence block (computational basis positions 0 and N−1) plus the
/// remaining diagonal; `residual` is the largest entry left over.
struct AdDecomposition {
  CMatrix coherence_part;
  CMatrix diagonal_part;
  double residual = 0.0;
};

struct StructurePredicates {
  bool is_generalized_permutation = false;
  bool is_upper_triangular = false;
  bool first_entry_zero = false;
};

/// Qubit dephasing: {√(1−η)·1, √η·σ_z}.
NoiseChannel dephasing(double eta);

/// Qubit depolarizing Kraus form: {√(η/4)σ_x, √(η/4)σ_y, √(η/4)σ_z,
/// √(1−3η/4)·1}; acts as ρ ↦ (1−η)ρ + (η/2)·1 on one qubit.
NoiseChannel depolarizing(double eta);

/// Global depolarizing map ρ ↦ (1−η)ρ + η·Tr(ρ)·1/dim (no Kraus list).
NoiseChannel depolarizing_global(double eta);

/// Qubit amplitude damping: {diag(1, √(1−η)), √η·|0⟩⟨1|}.
NoiseChannel amplitude_damping(double eta);

/// Qutrit erasure: keeps the qubit block with weight 1−η and moves lost
/// population to the flag level |e⟩ (four 3×3 Kraus operators).
NoiseChannel erasure(double eta);

/// Lifts a qubit unitary model to the qutrit space used by erasure: each
/// generator H becomes H ⊕ 0 (so U becomes U ⊕ 1) and the probe is embedded
/// with the flag level unpopulated. Kraus-encoded nodes are unsupported.
NetworkModel embed_for_erasure(const NetworkModel& model);

/// One explicit Kraus string ⊗_i A_{k(i)} over `slots` tensor slots.
CMatrix kraus_string(const NoiseChannel& channel, const std::vector<int>& indices);

/// Linear action of the channel on an arbitrary matrix over the given slot
/// layout. `nodes` lists the targeted slots (empty = all); global maps act
/// on everything regardless. Works on non-states (e.g. derivatives) too.
CMatrix apply_channel_matrix(const CMatrix& m, const NoiseChannel& channel,
                             const NodeDims& dims, const std::vector<int>& slots = {});

/// Channel applied to a state, re-validated as a density matrix.
DensityState apply_channel(const DensityState& rho, const NoiseChannel& channel,
                           const std::vector<int>& slots = {},
                           const Tolerances& tol = default_tol());

/// Largest ‖[A_k, U(θ_μ)]‖∞ over all Kraus operators and nodes; a qutrit
/// channel on a qubit model is checked against the embedded U ⊕ 1.
/// Global maps commute with every unitary conjugation and report 0.
double kraus_commutator_norm(const NoiseChannel& channel, const NetworkModel& model,
                             const ParamVector& theta);

/// Same defect measured up to one phase per Kraus operator
/// (min_φ ‖A_k U − e^{iφ} U A_k‖∞): Kraus phases are gauge, so this is the
/// defect of the channel commuting with sampling as a map.
double kraus_phase_commutator_norm(const NoiseChannel& channel, const NetworkModel& model,
                                   const ParamVector& theta);

/// True iff kraus_commutator_norm ≤ tol.commute (literal operator-level
/// commutation of every Kraus element with every node unitary).
bool commutes_with_sampling(const NoiseChannel& channel, const NetworkModel& model,
                            const ParamVector& theta,
                            const Tolerances& tol = default_tol());

/// Pairwise privacy verdict of the noisy encoded state. For noise after
/// sampling the parameter derivatives pass through the (parameter-
/// independent, linear) channel; for noise before sampling the probe is
/// replaced by the channel output and derivatives are taken of the
/// modified model.
PrivacyVerdict privacy_after_noise(const NetworkModel& model, const NoiseChannel& channel,
                                   NoiseStage stage, const ParamVector& theta,
                                   const WeightVector& w,
                                   double tol = default_tol().privacy);

/// Noisy encoded state for the given stage (helper shared with the sweep).
DensityState noisy_state(const NetworkModel& model, const NoiseChannel& channel,
                         NoiseStage stage, const ParamVector& theta,
                         const Tolerances& tol = default_tol());

/// Corner/diagonal split of an amplitude-damped GHZ-type state.
AdDecomposition ad_structure_decompose(const CMatrix& rho_out);

/// Structural predicates with entry threshold tol.zero_entry.
StructurePredicates matrix_structure_predicates(const CMatrix& m,
                                                const Tolerances& tol = default_tol());

}  // namespace qnet
