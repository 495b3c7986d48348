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

#include "qnet/qcore.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace qnet {

namespace {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ArgumentError(std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_hermitian(const CMatrix& m, double tol, const char* what) {
  require_square(m, what);
  if (max_abs(m - m.adjoint()) > tol) {
    throw ArgumentError(std::string(what) + ": matrix is not Hermitian within tolerance");
  }
}

}  // namespace

NodeDims::NodeDims(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ArgumentError("NodeDims: empty dimension list");
  for (int d : dims_) {
    if (d < 2) throw ArgumentError("NodeDims: each local dimension must be >= 2");
  }
}

long NodeDims::total() const {
  long p = 1;
  for (int d : dims_) p *= d;
  return p;
}

DensityState::DensityState(CMatrix rho, NodeDims dims, const Tolerances& tol)
    : rho_(std::move(rho)), dims_(std::move(dims)) {
  require_hermitian(rho_, tol.hermitian, "DensityState");
  if (rho_.rows() != dims_.total()) {
    throw ArgumentError("DensityState: matrix dimension does not match node dimensions");
  }
  if (std::abs(rho_.trace().real() - 1.0) > tol.trace_one ||
      std::abs(rho_.trace().imag()) > tol.trace_one) {
    throw ArgumentError("DensityState: trace is not 1 within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho_ + rho_.adjoint()),
                                            Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.psd) {
    throw ArgumentError("DensityState: matrix has eigenvalue below -psd tolerance");
  }
}

DensityState DensityState::from_vector(const CVector& psi, NodeDims dims,
                                       const Tolerances& tol) {
  if (std::abs(psi.norm() - 1.0) > tol.trace_one) {
    throw ArgumentError("DensityState::from_vector: state vector is not normalized");
  }
  return DensityState(psi * psi.adjoint(), std::move(dims), tol);
}

CMatrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

CMatrix tensor(const std::vector<CMatrix>& factors) {
  if (factors.empty()) throw ArgumentError("tensor: empty factor list");
  CMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    out = Eigen::kroneckerProduct(out, factors[i]).eval();
  }
  return out;
}

Spectrum eig_hermitian(const CMatrix& m, const Tolerances& tol) {
  require_hermitian(m, tol.hermitian, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigendecomposition failed to converge");
  }
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

double trace_norm(const CMatrix& m) {
  require_square(m, "trace_norm");
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double operator_norm(const CMatrix& m) {
  require_square(m, "operator_norm");
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues().maxCoeff();
}

CMatrix sqrt_psd(const CMatrix& m, const Tolerances& tol) {
  Spectrum s = eig_hermitian(m, tol);
  RVector vals = s.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return s.eigenvectors * vals.asDiagonal() * s.eigenvectors.adjoint();
}

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ArgumentError("fidelity: dimension mismatch");
  }
  const CMatrix root = sqrt_psd(rho);
  Spectrum inner = eig_hermitian(root * sigma * root);
  double f = inner.eigenvalues.cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityState& rho, const DensityState& sigma) {
  return fidelity(rho.matrix(), sigma.matrix());
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("commutator: dimension mismatch");
  }
  return a * b - b * a;
}

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("anticommutator: dimension mismatch");
  }
  return a * b + b * a;
}

CMatrix embed_local(const CMatrix& op, int node, const NodeDims& dims) {
  if (node < 0 || node >= dims.count()) {
    throw ArgumentError("embed_local: node index out of range");
  }
  if (op.rows() != op.cols() || op.rows() != dims.dim(node)) {
    throw ArgumentError("embed_local: operator dimension does not match the slot");
  }
  std::vector<CMatrix> factors;
  factors.reserve(static_cast<std::size_t>(dims.count()));
  for (int i = 0; i < dims.count(); ++i) {
    if (i == node) {
      factors.push_back(op);
    } else {
      factors.push_back(CMatrix::Identity(dims.dim(i), dims.dim(i)));
    }
  }
  return tensor(factors);
}

}  // namespace qnet
