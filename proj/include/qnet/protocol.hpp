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
#include <map>
#include <string>
#include <vector>

#include "qnet/fisher.hpp"
#include "qnet/qcore.hpp"

namespace qnet {

/// X-basis measurement record: counts per outcome bit string ('0' = +, '1'
/// = −, node 0 leftmost). Deterministic for a fixed seed.
struct OutcomeSample {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> counts;
};

/// Monte-Carlo estimation summary for the mean parameter θ̄.
struct EstimationResult {
  double theta_bar_hat = 0.0;  // average of the per-repetition estimates
  double mse = 0.0;            // mean squared error against the true θ̄
  double crb = 0.0;            // Cramér–Rao floor 1/(shots·d²)
  std::uint64_t shots = 0;
  int repetitions = 0;
};

/// GHZ-type probe α|0…0⟩ + β|1…1⟩ over d qubits (|α|² + |β|² = 1).
DensityState ghz_state(int d, Complex alpha, Complex beta,
                       const Tolerances& tol = default_tol());

/// Weighted eigen-state probe Σ_i c_i ⊗_μ |λ_i⟩^{⊗ω_μ} for integer node
/// weights: eigvecs' columns are the shared local eigenvectors |λ_i⟩ and
/// coeffs holds the c_i (Σ|c_i|² = 1; fewer coefficients than columns is
/// allowed).
DensityState weighted_eigen_state(const std::vector<int>& weights,
                                  const std::vector<Complex>& coeffs,
                                  const CMatrix& eigvecs,
                                  const Tolerances& tol = default_tol());

/// Mixture γ₀·ρ_ghz + Σ_i γ_i |b_i⟩⟨b_i| over computational basis states
/// b_i (given as global indices). Weights must be ≥ 0 and sum to 1.
DensityState mixed_private_state(double gamma0, const DensityState& ghz,
                                 const std::vector<std::pair<long, double>>& diag_weights,
                                 const Tolerances& tol = default_tol());

/// Probability of the X-basis outcome string: (1 + π_x cos(d·θ̄))/2^d with
/// π_x the outcome parity ((−1)^{number of − results}). `outcome` encodes
/// the string bitwise, bit k (from the most significant of d bits) = node k.
double parity_probability(int d, double theta_bar, std::uint64_t outcome);

/// The 2^d X-basis projectors ⊗|±⟩⟨±| in outcome-index order.
Povm x_basis_povm(int d, const Tolerances& tol = default_tol());

/// Draws `shots` i.i.d. outcome strings of the GHZ parity distribution at
/// the mean of theta. Fixed seed ⇒ identical counts.
OutcomeSample sample_outcomes(int d, const ParamVector& theta, std::uint64_t shots,
                              std::uint64_t seed);

/// Estimator θ̄̂ = arccos(clamped mean parity)/d; valid on d·θ̄ ∈ (0, π).
double estimate_mean(const OutcomeSample& sample);

/// Repeats sample→estimate R times (per-repetition seed = seed + r, so a
/// serial run equals any parallel schedule) and reports MSE against the
/// true mean alongside the CRB floor.
EstimationResult run_experiment(int d, const ParamVector& theta, std::uint64_t shots,
                                int repetitions, std::uint64_t seed);

}  // namespace qnet
