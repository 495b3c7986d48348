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

#include "qnet/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace qnet {

namespace {

// Weight gaps below this count as "equal weights" for the pairwise checks.
constexpr double kGapEps = 1e-12;

RVector to_vector(const WeightVector& w, const char* what) {
  if (w.empty()) throw ArgumentError(std::string(what) + ": empty weight vector");
  RVector wv(static_cast<int>(w.size()));
  double max_abs = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    wv(static_cast<int>(i)) = w[i];
    max_abs = std::max(max_abs, std::abs(w[i]));
  }
  if (max_abs == 0.0) throw ArgumentError(std::string(what) + ": weight vector is zero");
  return wv;
}

/// Shared engine for the pairwise proportionality checks: `norm_of(mu,nu)`
/// supplies the derivative-difference norm for a pair, and the verdict
/// demands zero for equal-weight pairs and a single common ratio otherwise.
PrivacyVerdict proportionality_verdict(int d, const WeightVector& w, double tol,
                                       const std::function<double(int, int)>& norm_of) {
  PrivacyVerdict v;
  double worst_zero_gap = 0.0;
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = 0.0;
  double ratio_sum = 0.0;
  int ratio_count = 0;
  for (int mu = 0; mu < d; ++mu) {
    for (int nu = mu + 1; nu < d; ++nu) {
      PairDiagnostic p;
      p.mu = mu;
      p.nu = nu;
      p.norm_diff = norm_of(mu, nu);
      p.weight_gap = std::abs(w[static_cast<std::size_t>(mu)] -
                              w[static_cast<std::size_t>(nu)]);
      if (p.weight_gap <= kGapEps) {
        worst_zero_gap = std::max(worst_zero_gap, p.norm_diff);
      } else {
        p.ratio = p.norm_diff / p.weight_gap;
        p.ratio_defined = true;
        ratio_min = std::min(ratio_min, p.ratio);
        ratio_max = std::max(ratio_max, p.ratio);
        ratio_sum += p.ratio;
        ++ratio_count;
      }
      v.pairs.push_back(p);
    }
  }
  bool zero_ok = worst_zero_gap <= tol;
  bool ratio_ok = true;
  double ratio_residual = 0.0;
  if (ratio_count > 0) {
    // Single proportionality constant: max/min − 1 within tol. A zero
    // ratio with a nonzero companion means the proportionality breaks
    // entirely (the gap cannot be bounded by the vanishing norm).
    ratio_ok = ratio_min > 0.0 && (ratio_max / ratio_min - 1.0) <= tol;
    if (ratio_max > 0.0) ratio_residual = (ratio_max - ratio_min) / ratio_max;
    v.scale_a = ratio_sum / ratio_count;
  }
  v.is_private = zero_ok && ratio_ok;
  v.residual_rel = std::max(worst_zero_gap, ratio_residual);
  return v;
}

/// Smallest eigenvalue of ρ on its numerical support plus the rank used.
std::pair<double, int> support_min_eigenvalue(const DensityState& rho, double rank_tol,
                                              const Tolerances& tol) {
  Spectrum s = eig_hermitian(rho.matrix(), tol);
  const double cut = rank_tol >= 0.0 ? rank_tol : tol.rank_rel * s.eigenvalues.maxCoeff();
  double lam_min = std::numeric_limits<double>::infinity();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues(i) > cut) {
      lam_min = std::min(lam_min, s.eigenvalues(i));
      ++rank;
    }
  }
  if (rank == 0) throw ArgumentError("xi: state has empty numerical support");
  return {lam_min, rank};
}

}  // namespace

RMatrix build_W(const WeightVector& w) {
  RVector wv = to_vector(w, "build_W");
  return wv * wv.transpose();
}

PrivacyVerdict rank_one_privacy_check(const FisherMatrix& q, const WeightVector& w,
                                      double tol) {
  RVector wv = to_vector(w, "rank_one_privacy_check");
  if (wv.size() != q.entries.rows()) {
    throw ArgumentError("rank_one_privacy_check: weight length does not match Q");
  }
  PrivacyVerdict v;
  const double q_norm = q.entries.norm();  // Frobenius
  if (q_norm == 0.0) {
    v.residual_defined = false;
    v.is_private = false;
    return v;
  }
  const double w2 = wv.squaredNorm();
  v.scale_a = wv.dot(q.entries * wv) / (w2 * w2);
  RMatrix residual = q.entries - v.scale_a * (wv * wv.transpose());
  v.residual_rel = residual.norm() / q_norm;

  // Every eigenvalue of Q restricted to w⊥ must be negligible: a rank-one
  // Q ∝ wwᵀ has no information in any direction orthogonal to w.
  RMatrix proj = RMatrix::Identity(wv.size(), wv.size()) -
                 (wv * wv.transpose()) / w2;
  RMatrix restricted = proj * q.entries * proj;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (restricted + restricted.transpose()),
                                            Eigen::EigenvaluesOnly);
  const double orth_max = es.eigenvalues().cwiseAbs().maxCoeff();

  v.is_private = v.residual_rel <= tol && orth_max <= tol * q_norm;
  return v;
}

PrivacyVerdict derivative_norm_condition(const std::vector<CMatrix>& drhos,
                                         const WeightVector& w, double tol) {
  if (drhos.size() != w.size()) {
    throw ArgumentError("derivative_norm_condition: derivative/weight count mismatch");
  }
  to_vector(w, "derivative_norm_condition");
  const int d = static_cast<int>(w.size());
  return proportionality_verdict(d, w, tol, [&](int mu, int nu) {
    return trace_norm(drhos[static_cast<std::size_t>(mu)] -
                      drhos[static_cast<std::size_t>(nu)]);
  });
}

PrivacyVerdict unitary_privacy_condition(const NetworkModel& model,
                                         const ParamVector& theta, const WeightVector& w,
                                         bool use_probe, double tol) {
  if (static_cast<int>(w.size()) != model.node_count()) {
    throw ArgumentError("unitary_privacy_condition: weight length does not match model");
  }
  if (!model.all_unitary()) {
    throw UnsupportedEncoding("unitary_privacy_condition: model has Kraus-encoded nodes");
  }
  if (!check_generator_commutation(model, theta)) {
    throw UnsupportedEncoding(
        "unitary_privacy_condition: generators do not commute with their derivatives; "
        "the commutator form does not represent ∂ρ");
  }
  const CMatrix rho =
      use_probe ? model.rho0().matrix() : evolve(model, theta).matrix();
  std::vector<CMatrix> h_primes;
  h_primes.reserve(static_cast<std::size_t>(model.node_count()));
  for (int mu = 0; mu < model.node_count(); ++mu) {
    h_primes.push_back(generator_derivative(model, mu, theta));
  }
  return proportionality_verdict(model.node_count(), w, tol, [&](int mu, int nu) {
    return trace_norm(commutator(h_primes[static_cast<std::size_t>(mu)] -
                                     h_primes[static_cast<std::size_t>(nu)],
                                 rho));
  });
}

bool average_privacy_condition(const std::vector<CMatrix>& drhos, double tol) {
  if (drhos.empty()) throw ArgumentError("average_privacy_condition: no derivatives");
  for (std::size_t mu = 0; mu + 1 < drhos.size(); ++mu) {
    for (std::size_t nu = mu + 1; nu < drhos.size(); ++nu) {
      if ((drhos[mu] - drhos[nu]).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

double xi(const DensityState& rho, double rank_tol, const Tolerances& tol) {
  const auto [lam_min, rank] = support_min_eigenvalue(rho, rank_tol, tol);
  (void)rank;
  return (1.0 / lam_min) * (1.0 + 32.0 / lam_min);
}

ContinuityBoundReport continuity_gap_bound(const DensityState& rho,
                                           const std::vector<CMatrix>& drhos, int mu,
                                           int nu, int mu_p, int nu_p, double rank_tol,
                                           const Tolerances& tol) {
  const int d = static_cast<int>(drhos.size());
  for (int idx : {mu, nu, mu_p, nu_p}) {
    if (idx < 0 || idx >= d) {
      throw ArgumentError("continuity_gap_bound: index out of range");
    }
  }
  FisherMatrix q = qfim(rho, drhos, {}, rank_tol, tol);

  ContinuityBoundReport report;
  const auto [lam_min, rank] = support_min_eigenvalue(rho, rank_tol, tol);
  report.lambda_min_support = lam_min;
  report.support_restricted = rank < rho.dim();
  report.xi = (1.0 / lam_min) * (1.0 + 32.0 / lam_min);
  report.lhs = std::abs(q.entries(mu, nu) - q.entries(mu_p, nu_p));

  auto tn = [&](int a) { return trace_norm(drhos[static_cast<std::size_t>(a)]); };
  auto tn_diff = [&](int a, int b) {
    return trace_norm(drhos[static_cast<std::size_t>(a)] -
                      drhos[static_cast<std::size_t>(b)]);
  };
  report.rhs = 0.5 * report.xi *
               (tn_diff(mu, mu_p) * (tn(nu) + tn(nu_p)) +
                tn_diff(nu, nu_p) * (tn(mu) + tn(mu_p)));
  return report;
}

double epsilon_privacy(const CMatrix& sigma, const CMatrix& h_mu, const CMatrix& h_nu) {
  if (h_mu.rows() != sigma.rows() || h_nu.rows() != sigma.rows() ||
      h_mu.cols() != sigma.cols() || h_nu.cols() != sigma.cols()) {
    throw ArgumentError("epsilon_privacy: dimension mismatch");
  }
  return trace_norm(commutator(h_mu - h_nu, sigma));
}

double epsilon_privacy_bound(const DensityState& sigma, const DensityState& varrho,
                             const CMatrix& h_local) {
  const double f = fidelity(sigma, varrho);
  const double defect = std::max(0.0, 1.0 - f * f);
  return 8.0 * operator_norm(h_local) * std::sqrt(defect);
}

}  // namespace qnet
