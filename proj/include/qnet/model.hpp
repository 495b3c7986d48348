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

#include <functional>
#include <variant>
#include <vector>

#include "qnet/qcore.hpp"

namespace qnet {

/// Node sampling e^{-i θ H} on each of `weight` identical tensor factors.
/// A weight-ω node occupies ω adjacent slots, all carrying the same local
/// unitary, so it picks up its parameter ω times.
struct MultiplicativeUnitary {
  CMatrix generator;  // Hermitian local generator H
  int weight = 1;     // ω ≥ 1, number of tensor copies
};

/// Node sampling e^{-i H(θ)} with an arbitrary θ-dependent Hermitian
/// generator on a single slot.
struct GeneralUnitary {
  int local_dim = 2;
  std::function<CMatrix(double)> hamiltonian;  // θ ↦ H(θ)
};

/// Node applying a θ-dependent Kraus channel on a single slot. The family
/// must be trace preserving at every sampled θ (checked on evaluation).
struct KrausEncoding {
  int local_dim = 2;
  std::function<std::vector<CMatrix>(double)> kraus;  // θ ↦ {A_k(θ)}
};

using EncodingMap = std::variant<MultiplicativeUnitary, GeneralUnitary, KrausEncoding>;

/// Sensor network: one encoding per node plus the shared probe state.
/// The probe's tensor factorization must match the expanded slot layout
/// (each weight-ω multiplicative node contributes ω slots).
class NetworkModel {
 public:
  NetworkModel(std::vector<EncodingMap> nodes, DensityState rho0);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<EncodingMap>& nodes() const { return nodes_; }
  const EncodingMap& node(int mu) const { return nodes_.at(static_cast<std::size_t>(mu)); }
  const DensityState& rho0() const { return rho0_; }
  const NodeDims& dims() const { return rho0_.dims(); }

  /// First tensor slot occupied by node mu.
  int node_slot(int mu) const { return slot_start_.at(static_cast<std::size_t>(mu)); }
  /// Number of tensor slots occupied by node mu (the weight for
  /// multiplicative nodes, 1 otherwise).
  int node_slot_count(int mu) const { return slot_count_.at(static_cast<std::size_t>(mu)); }

  bool all_unitary() const;

  /// Returns a copy of this model with a different probe state (same
  /// encodings); the new probe must share the slot layout.
  NetworkModel with_probe(DensityState rho) const;

 private:
  std::vector<EncodingMap> nodes_;
  DensityState rho0_;
  std::vector<int> slot_start_;
  std::vector<int> slot_count_;
};

/// Local sampling unitary of node mu at parameter theta_mu, acting on one
/// slot of the node (for multiplicative nodes each of the ω slots carries
/// this same matrix). Throws UnsupportedEncoding for Kraus nodes.
CMatrix local_unitary(const EncodingMap& node, double theta_mu,
                      const Tolerances& tol = default_tol());

/// Full sampling unitary U_Θ = ⊗_μ U_μ(θ_μ) across all expanded slots.
/// Throws UnsupportedEncoding if any node is Kraus encoded.
CMatrix sampling_unitary(const NetworkModel& model, const ParamVector& theta,
                         const Tolerances& tol = default_tol());

/// Encoded state ρ_Θ: each node's unitary or channel applied to the probe.
DensityState evolve(const NetworkModel& model, const ParamVector& theta,
                    const Tolerances& tol = default_tol());

/// Global generator derivative ℍ′_μ: for a multiplicative node the sum of
/// the local generator embedded on each of its ω slots; for a general
/// unitary node the embedded ∂_θ H(θ_μ) (central finite differences).
/// Throws UnsupportedEncoding for Kraus nodes.
CMatrix generator_derivative(const NetworkModel& model, int mu, const ParamVector& theta,
                             const Tolerances& tol = default_tol());

/// ∂_μ ρ_Θ: analytic −i[ℍ′_μ, ρ_Θ] for unitary models, central finite
/// differences of evolve when any node is Kraus encoded.
CMatrix state_derivative(const NetworkModel& model, int mu, const ParamVector& theta,
                         const Tolerances& tol = default_tol());

/// All parameter derivatives ∂_μ ρ_Θ, μ = 0…d−1.
std::vector<CMatrix> state_derivatives(const NetworkModel& model, const ParamVector& theta,
                                       const Tolerances& tol = default_tol());

/// True iff every unitary node satisfies [∂_θ H, H] = 0 at theta (within
/// tol.commute); multiplicative nodes trivially pass. The commuting-
/// generator identities for privacy checks are only valid when this holds.
bool check_generator_commutation(const NetworkModel& model, const ParamVector& theta,
                                 const Tolerances& tol = default_tol());

}  // namespace qnet
