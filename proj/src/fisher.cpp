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

#include "qnet/fisher.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qnet {

namespace {

void require_drho(const CMatrix& drho, long dim, double tol, const char* what) {
  if (drho.rows() != dim || drho.cols() != dim) {
    throw ArgumentError(std::string(what) + ": derivative dimension mismatch");
  }
  if ((drho - drho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw ArgumentError(std::string(what) + ": derivative is not Hermitian");
  }
}

ParamVector default_theta(const ParamVector& theta, std::size_t d) {
  if (theta.empty()) return ParamVector(d, 0.0);
  if (theta.size() != d) {
    throw ArgumentError("theta length does not match the number of derivatives");
  }
  return theta;
}

}  // namespace

FisherMatrix::FisherMatrix(RMatrix entries_in, Kind kind_in, ParamVector theta_in,
                           const Tolerances& tol)
    : entries(std::move(entries_in)), kind(kind_in), theta(std::move(theta_in)) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw ArgumentError("FisherMatrix: entries must form a non-empty square matrix");
  }
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > tol.fisher_sym) {
    throw ArgumentError("FisherMatrix: entries are not symmetric within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (entries + entries.transpose()),
                                            Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.fisher_psd) {
    throw ArgumentError("FisherMatrix: entries are not positive semidefinite");
  }
  if (!theta.empty() && static_cast<Eigen::Index>(theta.size()) != entries.rows()) {
    throw ArgumentError("FisherMatrix: theta length does not match matrix size");
  }
}

Povm::Povm(std::vector<CMatrix> effects, const Tolerances& tol)
    : effects_(std::move(effects)) {
  if (effects_.empty()) throw ArgumentError("Povm: empty effect list");
  const long dim = effects_.front().rows();
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const CMatrix& e : effects_) {
    if (e.rows() != dim || e.cols() != dim) {
      throw ArgumentError("Povm: effects must share one square dimension");
    }
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol.hermitian) {
      throw ArgumentError("Povm: effect is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (e + e.adjoint()),
                                              Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.psd) {
      throw ArgumentError("Povm: effect is not positive semidefinite");
    }
    sum += e;
  }
  if ((sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol.povm_complete) {
    throw ArgumentError("Povm: effects do not sum to the identity");
  }
}

CMatrix sld(const DensityState& rho, const CMatrix& drho, double rank_tol,
            const Tolerances& tol) {
  require_drho(drho, rho.dim(), tol.derivative_sym, "sld");
  Spectrum s = eig_hermitian(rho.matrix(), tol);
  const double lam_max = s.eigenvalues.maxCoeff();
  const double cut = rank_tol >= 0.0 ? rank_tol : tol.rank_rel * lam_max;

  const CMatrix d_in_basis = s.eigenvectors.adjoint() * drho * s.eigenvectors;
  CMatrix l = CMatrix::Zero(rho.dim(), rho.dim());
  for (Eigen::Index j = 0; j < l.rows(); ++j) {
    for (Eigen::Index k = 0; k < l.cols(); ++k) {
      const double denom = s.eigenvalues(j) + s.eigenvalues(k);
      if (denom > cut) l(j, k) = 2.0 * d_in_basis(j, k) / denom;
    }
  }
  return s.eigenvectors * l * s.eigenvectors.adjoint();
}

FisherMatrix qfim(const DensityState& rho, const std::vector<CMatrix>& drhos,
                  const ParamVector& theta, double rank_tol, const Tolerances& tol) {
  if (drhos.empty()) throw ArgumentError("qfim: no derivatives supplied");
  const int d = static_cast<int>(drhos.size());
  std::vector<CMatrix> ls;
  ls.reserve(drhos.size());
  for (const CMatrix& drho : drhos) ls.push_back(sld(rho, drho, rank_tol, tol));

  RMatrix q(d, d), alt(d, d);
  for (int mu = 0; mu < d; ++mu) {
    for (int nu = mu; nu < d; ++nu) {
      const auto& dm = drhos[static_cast<std::size_t>(mu)];
      const auto& dn = drhos[static_cast<std::size_t>(nu)];
      const auto& lm = ls[static_cast<std::size_t>(mu)];
      const auto& ln = ls[static_cast<std::size_t>(nu)];
      q(mu, nu) = q(nu, mu) =
          0.5 * (rho.matrix() * anticommutator(lm, ln)).trace().real();
      alt(mu, nu) = alt(nu, mu) = 0.5 * ((dm * ln).trace() + (dn * lm).trace()).real();
    }
  }
  if ((q - alt).cwiseAbs().maxCoeff() > tol.fisher_cross) {
    throw NumericalError("qfim: the two evaluation routes disagree beyond tolerance");
  }
  return FisherMatrix(0.5 * (q + q.transpose()), FisherMatrix::Kind::quantum,
                      default_theta(theta, drhos.size()), tol);
}

FisherMatrix qfim_pure(const CVector& psi, const std::vector<CVector>& dpsis,
                       const ParamVector& theta, const Tolerances& tol) {
  if (dpsis.empty()) throw ArgumentError("qfim_pure: no derivatives supplied");
  if (std::abs(psi.norm() - 1.0) > tol.state_reconstruct) {
    throw ArgumentError("qfim_pure: state vector is not normalized");
  }
  const int d = static_cast<int>(dpsis.size());
  RMatrix q(d, d);
  for (int mu = 0; mu < d; ++mu) {
    for (int nu = mu; nu < d; ++nu) {
      const auto& dm = dpsis[static_cast<std::size_t>(mu)];
      const auto& dn = dpsis[static_cast<std::size_t>(nu)];
      if (dm.size() != psi.size() || dn.size() != psi.size()) {
        throw ArgumentError("qfim_pure: derivative dimension mismatch");
      }
      const Complex overlap = dm.dot(dn);              // ⟨∂_μψ|∂_νψ⟩
      const Complex gauge = dm.dot(psi) * psi.dot(dn); // ⟨∂_μψ|ψ⟩⟨ψ|∂_νψ⟩
      q(mu, nu) = q(nu, mu) = 4.0 * (overlap - gauge).real();
    }
  }
  return FisherMatrix(0.5 * (q + q.transpose()), FisherMatrix::Kind::quantum,
                      default_theta(theta, dpsis.size()), tol);
}

FisherMatrix cfim(const DensityState& rho, const Povm& povm,
                  const std::vector<CMatrix>& drhos, const ParamVector& theta,
                  const Tolerances& tol) {
  if (drhos.empty()) throw ArgumentError("cfim: no derivatives supplied");
  const int d = static_cast<int>(drhos.size());
  for (const CMatrix& drho : drhos) {
    require_drho(drho, rho.dim(), tol.derivative_sym, "cfim");
  }
  RMatrix f = RMatrix::Zero(d, d);
  for (int x = 0; x < povm.outcome_count(); ++x) {
    const CMatrix& e = povm.effect(x);
    if (e.rows() != rho.dim()) {
      throw ArgumentError("cfim: POVM dimension does not match the state");
    }
    const double p = (rho.matrix() * e).trace().real();
    if (p <= tol.p_floor) continue;
    RVector dp(d);
    for (int mu = 0; mu < d; ++mu) {
      dp(mu) = (drhos[static_cast<std::size_t>(mu)] * e).trace().real();
    }
    f += (dp * dp.transpose()) / p;
  }
  return FisherMatrix(0.5 * (f + f.transpose()), FisherMatrix::Kind::classical,
                      default_theta(theta, drhos.size()), tol);
}

bool cfim_leq_qfim_check(const FisherMatrix& cf, const FisherMatrix& qf, double margin) {
  if (cf.entries.rows() != qf.entries.rows()) {
    throw ArgumentError("cfim_leq_qfim_check: dimension mismatch");
  }
  RMatrix gap = qf.entries - cf.entries;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (gap + gap.transpose()),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -margin;
}

FisherMatrix reparametrize(const FisherMatrix& m, const RMatrix& b, const Tolerances& tol) {
  if (b.rows() != m.entries.rows() || b.cols() != b.rows()) {
    throw ArgumentError("reparametrize: B must be square and match the matrix size");
  }
  Eigen::FullPivLU<RMatrix> lu(b);
  if (!lu.isInvertible()) {
    throw ArgumentError("reparametrize: B is singular, not a valid reparametrization");
  }
  return FisherMatrix(b.transpose() * m.entries * b, m.kind, {}, tol);
}

RMatrix reparam_completion(const WeightVector& w) {
  const int d = static_cast<int>(w.size());
  if (d == 0) throw ArgumentError("reparam_completion: empty weight vector");
  RVector wv(d);
  for (int i = 0; i < d; ++i) wv(i) = w[static_cast<std::size_t>(i)];
  const double nrm2 = wv.squaredNorm();
  if (nrm2 <= 0.0) throw ArgumentError("reparam_completion: weight vector is zero");

  // Householder QR of w: column 0 of Q spans w, the rest span w⊥.
  Eigen::HouseholderQR<RMatrix> qr(wv);
  RMatrix qmat = qr.householderQ() * RMatrix::Identity(d, d);
  if ((qmat.col(0) - wv / wv.norm()).norm() > (qmat.col(0) + wv / wv.norm()).norm()) {
    qmat.col(0) *= -1.0;  // fix the sign so column 0 is +w/‖w‖
  }
  RMatrix b(d, d);
  b.col(0) = wv / nrm2;
  for (int c = 1; c < d; ++c) b.col(c) = qmat.col(c);
  return b;
}

CovarianceBound crb_covariance_bound(const FisherMatrix& f, long shots,
                                     const Tolerances& tol) {
  if (shots < 1) throw ArgumentError("crb_covariance_bound: shots must be >= 1");
  const int d = static_cast<int>(f.entries.rows());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (f.entries + f.entries.transpose()));
  const RVector vals = es.eigenvalues();
  const RMatrix vecs = es.eigenvectors();
  const double cut = tol.rank_rel * std::max(vals.cwiseAbs().maxCoeff(), 0.0);

  CovarianceBound out;
  RVector inv = RVector::Zero(d);
  std::vector<int> kernel;
  for (int i = 0; i < d; ++i) {
    if (vals(i) > cut) {
      inv(i) = 1.0 / vals(i);
    } else {
      kernel.push_back(i);
    }
  }
  out.cov = (vecs * inv.asDiagonal() * vecs.transpose()) / static_cast<double>(shots);
  out.rank = d - static_cast<int>(kernel.size());
  out.fully_identifiable = kernel.empty();
  out.unidentifiable_directions = RMatrix(d, static_cast<int>(kernel.size()));
  for (std::size_t c = 0; c < kernel.size(); ++c) {
    out.unidentifiable_directions.col(static_cast<int>(c)) = vecs.col(kernel[c]);
  }
  return out;
}

}  // namespace qnet
