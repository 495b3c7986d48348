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

#include "qnet/qcore.hpp"

namespace qnet {

/// Fisher information matrix over d parameters, tagged with its origin.
/// Validated symmetric (tol.fisher_sym) and PSD (tol.fisher_psd).
struct FisherMatrix {
  enum class Kind { quantum, classical };

  FisherMatrix(RMatrix entries, Kind kind, ParamVector theta,
               const Tolerances& tol = default_tol());

  RMatrix entries;
  Kind kind;
  ParamVector theta;  // parameter point the matrix was evaluated at
};

/// POVM: effects must be Hermitian, PSD, and sum to the identity within
/// tol.povm_complete.
class Povm {
 public:
  explicit Povm(std::vector<CMatrix> effects, const Tolerances& tol = default_tol());

  int outcome_count() const { return static_cast<int>(effects_.size()); }
  const CMatrix& effect(int x) const { return effects_.at(static_cast<std::size_t>(x)); }
  const std::vector<CMatrix>& effects() const { return effects_; }

 private:
  std::vector<CMatrix> effects_;
};

/// Result of inverting a Fisher matrix for the Cramér–Rao bound. Directions
/// in the kernel of F carry no information; they are flagged rather than
/// reported as infinite variances.
struct CovarianceBound {
  RMatrix cov;                        // pinv(F) / shots
  int rank = 0;                       // numerical rank of F
  bool fully_identifiable = false;    // rank == d
  RMatrix unidentifiable_directions;  // d×(d−rank) orthonormal kernel basis
};

/// Symmetric logarithmic derivative L solving ∂ρ = (Lρ + ρL)/2. In the
/// eigenbasis of ρ: L_jk = 2 (∂ρ)_jk / (λ_j + λ_k) when λ_j + λ_k exceeds
/// rank_tol, else 0 (minimal-norm completion on the kernel).
/// rank_tol < 0 selects the default cut tol.rank_rel × λ_max.
CMatrix sld(const DensityState& rho, const CMatrix& drho, double rank_tol = -1.0,
            const Tolerances& tol = default_tol());

/// Quantum Fisher information matrix Q_μν = ½ Tr(ρ {L_μ, L_ν}). The result
/// is cross-checked against the equivalent form ½ Tr(∂_μρ L_ν + ∂_νρ L_μ);
/// disagreement beyond tol.fisher_cross raises NumericalError.
FisherMatrix qfim(const DensityState& rho, const std::vector<CMatrix>& drhos,
                  const ParamVector& theta = {}, double rank_tol = -1.0,
                  const Tolerances& tol = default_tol());

/// Pure-state shortcut Q_μν = 4 Re(⟨∂_μψ|∂_νψ⟩ − ⟨∂_μψ|ψ⟩⟨ψ|∂_νψ⟩).
FisherMatrix qfim_pure(const CVector& psi, const std::vector<CVector>& dpsis,
                       const ParamVector& theta = {},
                       const Tolerances& tol = default_tol());

/// Classical Fisher information of the POVM outcome distribution,
/// F_μν = Σ_x (∂_μ p_x)(∂_ν p_x)/p_x; outcomes with p_x ≤ tol.p_floor are
/// dropped.
FisherMatrix cfim(const DensityState& rho, const Povm& povm,
                  const std::vector<CMatrix>& drhos, const ParamVector& theta = {},
                  const Tolerances& tol = default_tol());

/// Checks F ≼ Q in the PSD order: smallest eigenvalue of Q − F must be
/// ≥ −margin (default 1e-8). Entrywise comparisons are diagnostics only;
/// matrix order is the meaningful statement.
bool cfim_leq_qfim_check(const FisherMatrix& cf, const FisherMatrix& qf,
                         double margin = 1e-8);

/// Congruence transform M′ = Bᵀ M B for a reparametrization Θ(θ′) with
/// B_μν = ∂θ_μ/∂θ′_ν. B must be square and invertible.
FisherMatrix reparametrize(const FisherMatrix& m, const RMatrix& b,
                           const Tolerances& tol = default_tol());

/// Completion matrix for the coordinate change whose first new coordinate
/// is w^T Θ: column 0 is w/‖w‖², the rest an orthonormal basis of w⊥, so
/// (Bᵀ Q B)_00 is the inverse-variance information about w^T Θ.
RMatrix reparam_completion(const WeightVector& w);

/// Cramér–Rao covariance bound pinv(F)/shots with unidentifiable-direction
/// flags; the pseudo-inverse cuts singular values below tol.rank_rel × max.
CovarianceBound crb_covariance_bound(const FisherMatrix& f, long shots,
                                     const Tolerances& tol = default_tol());

}  // namespace qnet
