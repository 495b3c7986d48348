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

#include <vector>

#include "qnet/fisher.hpp"
#include "qnet/model.hpp"
#include "qnet/qcore.hpp"

namespace qnet {

/// Per-pair record backing a privacy verdict: the derivative-difference
/// norm, the weight gap |w_μ − w_ν|, and their ratio when the gap is
/// nonzero.
struct PairDiagnostic {
  int mu = 0;
  int nu = 0;
  double norm_diff = 0.0;
  double weight_gap = 0.0;
  double ratio = 0.0;
  bool ratio_defined = false;
};

/// Outcome of a privacy check. `is_private` holds iff `residual_rel` is
/// within the tolerance the check was called with; `scale_a` is the fitted
/// proportionality constant (Q ≈ a wwᵀ for the rank-one check, the common
/// norm/gap ratio for pairwise checks).
struct PrivacyVerdict {
  bool is_private = false;
  double scale_a = 0.0;
  double residual_rel = 0.0;
  bool residual_defined = true;
  std::vector<PairDiagnostic> pairs;
};

/// One evaluation of the Fisher-information continuity bound: lhs is the
/// entry gap |Q_μν − Q_μ′ν′|, rhs the derivative-norm bound, xi the
/// state-dependent prefactor from the smallest support eigenvalue.
struct ContinuityBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double xi = 0.0;
  double lambda_min_support = 0.0;
  bool support_restricted = false;  // true when rank(ρ) < dim and xi was
                                    // computed on the support restriction
};

/// Rank-one target W = wwᵀ.
RMatrix build_W(const WeightVector& w);

/// Tests Q ∝ wwᵀ: fits a = (wᵀQw)/(wᵀw)², reports the relative Frobenius
/// residual, and additionally requires every eigenvalue of Q restricted to
/// w⊥ to be ≤ tol·‖Q‖_F. An all-zero Q is flagged (residual undefined,
/// not private).
PrivacyVerdict rank_one_privacy_check(const FisherMatrix& q, const WeightVector& w,
                                      double tol = default_tol().privacy);

/// Pairwise derivative condition: ‖∂_μρ − ∂_νρ‖₁ must vanish for pairs
/// with w_μ = w_ν and be proportional to |w_μ − w_ν| otherwise (one common
/// constant across all pairs). residual_rel is the worst violation: the
/// largest zero-gap norm or the relative spread of the ratios.
PrivacyVerdict derivative_norm_condition(const std::vector<CMatrix>& drhos,
                                         const WeightVector& w,
                                         double tol = default_tol().privacy);

/// Commuting-unitary form of the pairwise condition using
/// ‖[ℍ′_μ − ℍ′_ν, ρ]‖₁ with ρ the probe (use_probe=true) or the encoded
/// state ρ_Θ. Requires check_generator_commutation to pass, otherwise
/// UnsupportedEncoding: with non-commuting generators the commutator form
/// does not represent the derivative.
PrivacyVerdict unitary_privacy_condition(const NetworkModel& model,
                                         const ParamVector& theta, const WeightVector& w,
                                         bool use_probe = false,
                                         double tol = default_tol().privacy);

/// Average-estimation special case: all ∂_μρ equal. True iff the largest
/// entry of ∂_μρ − ∂_νρ over all pairs is ≤ tol.
bool average_privacy_condition(const std::vector<CMatrix>& drhos,
                               double tol = default_tol().privacy);

/// Prefactor ξ(ρ) = (1/λ_min)(1 + 32/λ_min) with λ_min the smallest
/// eigenvalue of ρ above rank_tol (support restriction). rank_tol < 0
/// selects tol.rank_rel × λ_max.
double xi(const DensityState& rho, double rank_tol = -1.0,
          const Tolerances& tol = default_tol());

/// Continuity bound for the QFIM entry gap |Q_μν − Q_μ′ν′| in terms of the
/// trace norms of the parameter derivatives.
ContinuityBoundReport continuity_gap_bound(const DensityState& rho,
                                           const std::vector<CMatrix>& drhos, int mu,
                                           int nu, int mu_p, int nu_p,
                                           double rank_tol = -1.0,
                                           const Tolerances& tol = default_tol());

/// ε-privacy of σ for the node pair behind the two global generator
/// derivatives: ε = ‖[h_mu − h_nu, σ]‖₁. Exactly private states give 0.
double epsilon_privacy(const CMatrix& sigma, const CMatrix& h_mu, const CMatrix& h_nu);

/// Fidelity upper bound on ε: 8 ‖H_local‖∞ √(1 − F²(σ, ϱ)) for σ near an
/// exactly private ϱ. H_local is a single-node generator; the caller is
/// responsible for ϱ actually being private.
double epsilon_privacy_bound(const DensityState& sigma, const DensityState& varrho,
                             const CMatrix& h_local);

}  // namespace qnet
