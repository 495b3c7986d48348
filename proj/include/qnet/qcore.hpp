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

#include "qnet/common.hpp"

namespace qnet {

/// Local dimensions of the tensor factors a multipartite operator lives on.
/// The global dimension is the product, factor 0 being the leftmost (most
/// significant) slot in the Kronecker ordering.
class NodeDims {
 public:
  NodeDims() = default;
  explicit NodeDims(std::vector<int> dims);

  int count() const { return static_cast<int>(dims_.size()); }
  int dim(int i) const { return dims_.at(static_cast<std::size_t>(i)); }
  long total() const;
  const std::vector<int>& list() const { return dims_; }

  bool operator==(const NodeDims& o) const { return dims_ == o.dims_; }

 private:
  std::vector<int> dims_;
};

/// Density matrix together with its tensor factorization. Construction
/// validates Hermiticity, unit trace, and positivity against the supplied
/// tolerance record; anything failing validation throws ArgumentError.
class DensityState {
 public:
  DensityState(CMatrix rho, NodeDims dims, const Tolerances& tol = default_tol());

  /// Builds the pure state |ψ⟩⟨ψ| after checking normalization.
  static DensityState from_vector(const CVector& psi, NodeDims dims,
                                  const Tolerances& tol = default_tol());

  const CMatrix& matrix() const { return rho_; }
  const NodeDims& dims() const { return dims_; }
  long dim() const { return rho_.rows(); }

 private:
  CMatrix rho_;
  NodeDims dims_;
};

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;  // columns are eigenvectors, same order as eigenvalues

  CMatrix reconstruct() const;
};

/// Kronecker product of the factors in list order (factor 0 leftmost).
CMatrix tensor(const std::vector<CMatrix>& factors);

/// Eigendecomposition of a Hermitian matrix. The input is checked against
/// `tol.hermitian` and symmetrized as (M + M†)/2 before decomposition.
Spectrum eig_hermitian(const CMatrix& m, const Tolerances& tol = default_tol());

/// Trace norm ‖M‖₁ = sum of singular values.
double trace_norm(const CMatrix& m);

/// Operator norm ‖M‖∞ = largest singular value.
double operator_norm(const CMatrix& m);

/// Uhlmann fidelity F(ρ,σ) = Tr √(√ρ σ √ρ), clamped to [0, 1].
double fidelity(const DensityState& rho, const DensityState& sigma);

/// Fidelity on raw matrices; both inputs must be valid density matrices
/// (the caller vouches — used on intermediate states already validated).
double fidelity(const CMatrix& rho, const CMatrix& sigma);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

/// Embeds a local operator at tensor slot `node`: 1 ⊗ … ⊗ op ⊗ … ⊗ 1.
/// `op` must be square with dimension dims.dim(node).
CMatrix embed_local(const CMatrix& op, int node, const NodeDims& dims);

/// Positive square root of a PSD Hermitian matrix (negative eigenvalues
/// from roundoff are clamped to zero).
CMatrix sqrt_psd(const CMatrix& m, const Tolerances& tol = default_tol());

}  // namespace qnet
