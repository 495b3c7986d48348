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

#include "qnet/model.hpp"

#include <cmath>
#include <utility>

namespace qnet {

namespace {

int encoding_local_dim(const EncodingMap& node) {
  if (const auto* m = std::get_if<MultiplicativeUnitary>(&node)) {
    return static_cast<int>(m->generator.rows());
  }
  if (const auto* g = std::get_if<GeneralUnitary>(&node)) {
    return g->local_dim;
  }
  return std::get<KrausEncoding>(node).local_dim;
}

int encoding_slot_count(const EncodingMap& node) {
  if (const auto* m = std::get_if<MultiplicativeUnitary>(&node)) {
    return m->weight;
  }
  return 1;
}

void validate_encoding(const EncodingMap& node, const Tolerances& tol) {
  if (const auto* m = std::get_if<MultiplicativeUnitary>(&node)) {
    if (m->weight < 1) {
      throw ArgumentError("MultiplicativeUnitary: weight must be a positive integer");
    }
    if (m->generator.rows() != m->generator.cols() || m->generator.rows() < 2) {
      throw ArgumentError("MultiplicativeUnitary: generator must be square, dim >= 2");
    }
    if ((m->generator - m->generator.adjoint()).cwiseAbs().maxCoeff() > tol.hermitian) {
      throw ArgumentError("MultiplicativeUnitary: generator must be Hermitian");
    }
    return;
  }
  if (const auto* g = std::get_if<GeneralUnitary>(&node)) {
    if (g->local_dim < 2) throw ArgumentError("GeneralUnitary: local_dim must be >= 2");
    if (!g->hamiltonian) throw ArgumentError("GeneralUnitary: hamiltonian callback is empty");
    return;
  }
  const auto& k = std::get<KrausEncoding>(node);
  if (k.local_dim < 2) throw ArgumentError("KrausEncoding: local_dim must be >= 2");
  if (!k.kraus) throw ArgumentError("KrausEncoding: kraus callback is empty");
}

/// Evaluates a GeneralUnitary Hamiltonian and checks shape + Hermiticity.
CMatrix general_hamiltonian(const GeneralUnitary& g, double theta, const Tolerances& tol) {
  CMatrix h = g.hamiltonian(theta);
  if (h.rows() != g.local_dim || h.cols() != g.local_dim) {
    throw ArgumentError("GeneralUnitary: hamiltonian(θ) has wrong dimension");
  }
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol.hermitian) {
    throw ArgumentError("GeneralUnitary: hamiltonian(θ) is not Hermitian");
  }
  return h;
}

/// e^{-iH} for Hermitian H via eigendecomposition; exactly unitary up to
/// machine precision.
CMatrix expm_herm(const CMatrix& h, const Tolerances& tol) {
  Spectrum s = eig_hermitian(h, tol);
  CVector phases(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -s.eigenvalues(i));
  }
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

std::vector<CMatrix> kraus_at(const KrausEncoding& k, double theta, const Tolerances& tol) {
  std::vector<CMatrix> ops = k.kraus(theta);
  if (ops.empty()) throw ArgumentError("KrausEncoding: empty Kraus list");
  CMatrix sum = CMatrix::Zero(k.local_dim, k.local_dim);
  for (const CMatrix& a : ops) {
    if (a.rows() != k.local_dim || a.cols() != k.local_dim) {
      throw ArgumentError("KrausEncoding: Kraus operator has wrong dimension");
    }
    sum += a.adjoint() * a;
  }
  if ((sum - CMatrix::Identity(k.local_dim, k.local_dim)).cwiseAbs().maxCoeff() >
      tol.kraus_complete) {
    throw ArgumentError("KrausEncoding: Kraus set is not trace preserving at sampled θ");
  }
  return ops;
}

void require_theta(const NetworkModel& model, const ParamVector& theta) {
  if (static_cast<int>(theta.size()) != model.node_count()) {
    throw ArgumentError("theta length does not match the number of nodes");
  }
}

/// Applies node mu's encoding at theta_mu to an arbitrary matrix (not
/// necessarily a state); the workhorse behind evolve.
CMatrix apply_node(const NetworkModel& model, int mu, double theta_mu,
                   const CMatrix& rho, const Tolerances& tol) {
  const EncodingMap& node = model.node(mu);
  if (const auto* k = std::get_if<KrausEncoding>(&node)) {
    std::vector<CMatrix> ops = kraus_at(*k, theta_mu, tol);
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (const CMatrix& a : ops) {
      CMatrix lifted = embed_local(a, model.node_slot(mu), model.dims());
      out += lifted * rho * lifted.adjoint();
    }
    return out;
  }
  CMatrix u_local = local_unitary(node, theta_mu, tol);
  CMatrix out = rho;
  for (int j = 0; j < model.node_slot_count(mu); ++j) {
    CMatrix lifted = embed_local(u_local, model.node_slot(mu) + j, model.dims());
    out = lifted * out * lifted.adjoint();
  }
  return out;
}

CMatrix evolve_matrix(const NetworkModel& model, const ParamVector& theta,
                      const Tolerances& tol) {
  CMatrix rho = model.rho0().matrix();
  for (int mu = 0; mu < model.node_count(); ++mu) {
    rho = apply_node(model, mu, theta[static_cast<std::size_t>(mu)], rho, tol);
  }
  return rho;
}

}  // namespace

NetworkModel::NetworkModel(std::vector<EncodingMap> nodes, DensityState rho0)
    : nodes_(std::move(nodes)), rho0_(std::move(rho0)) {
  if (nodes_.empty()) throw ArgumentError("NetworkModel: at least one node required");
  std::vector<int> expanded;
  int slot = 0;
  for (const EncodingMap& node : nodes_) {
    validate_encoding(node, default_tol());
    slot_start_.push_back(slot);
    int count = encoding_slot_count(node);
    slot_count_.push_back(count);
    slot += count;
    for (int j = 0; j < count; ++j) expanded.push_back(encoding_local_dim(node));
  }
  if (expanded != rho0_.dims().list()) {
    throw ArgumentError(
        "NetworkModel: probe factorization does not match the expanded node slots");
  }
}

bool NetworkModel::all_unitary() const {
  for (const EncodingMap& node : nodes_) {
    if (std::holds_alternative<KrausEncoding>(node)) return false;
  }
  return true;
}

NetworkModel NetworkModel::with_probe(DensityState rho) const {
  return NetworkModel(nodes_, std::move(rho));
}

CMatrix local_unitary(const EncodingMap& node, double theta_mu, const Tolerances& tol) {
  if (const auto* m = std::get_if<MultiplicativeUnitary>(&node)) {
    return expm_herm(theta_mu * m->generator, tol);
  }
  if (const auto* g = std::get_if<GeneralUnitary>(&node)) {
    return expm_herm(general_hamiltonian(*g, theta_mu, tol), tol);
  }
  throw UnsupportedEncoding("local_unitary: node is Kraus encoded, no sampling unitary");
}

CMatrix sampling_unitary(const NetworkModel& model, const ParamVector& theta,
                         const Tolerances& tol) {
  require_theta(model, theta);
  std::vector<CMatrix> factors;
  for (int mu = 0; mu < model.node_count(); ++mu) {
    CMatrix u = local_unitary(model.node(mu), theta[static_cast<std::size_t>(mu)], tol);
    for (int j = 0; j < model.node_slot_count(mu); ++j) factors.push_back(u);
  }
  CMatrix full = tensor(factors);
  CMatrix defect = full.adjoint() * full - CMatrix::Identity(full.rows(), full.cols());
  if (defect.cwiseAbs().maxCoeff() > tol.unitary) {
    throw NumericalError("sampling_unitary: result failed the unitarity check");
  }
  return full;
}

DensityState evolve(const NetworkModel& model, const ParamVector& theta,
                    const Tolerances& tol) {
  require_theta(model, theta);
  return DensityState(evolve_matrix(model, theta, tol), model.dims(), tol);
}

CMatrix generator_derivative(const NetworkModel& model, int mu, const ParamVector& theta,
                             const Tolerances& tol) {
  require_theta(model, theta);
  if (mu < 0 || mu >= model.node_count()) {
    throw ArgumentError("generator_derivative: node index out of range");
  }
  const EncodingMap& node = model.node(mu);
  if (const auto* m = std::get_if<MultiplicativeUnitary>(&node)) {
    CMatrix sum = CMatrix::Zero(model.dims().total(), model.dims().total());
    for (int j = 0; j < m->weight; ++j) {
      sum += embed_local(m->generator, model.node_slot(mu) + j, model.dims());
    }
    return sum;
  }
  if (const auto* g = std::get_if<GeneralUnitary>(&node)) {
    const double h = tol.fd_step;
    const double t = theta[static_cast<std::size_t>(mu)];
    CMatrix dh = (general_hamiltonian(*g, t + h, tol) - general_hamiltonian(*g, t - h, tol)) /
                 (2.0 * h);
    dh = 0.5 * (dh + dh.adjoint()).eval();
    return embed_local(dh, model.node_slot(mu), model.dims());
  }
  throw UnsupportedEncoding("generator_derivative: node is Kraus encoded");
}

CMatrix state_derivative(const NetworkModel& model, int mu, const ParamVector& theta,
                         const Tolerances& tol) {
  require_theta(model, theta);
  if (mu < 0 || mu >= model.node_count()) {
    throw ArgumentError("state_derivative: node index out of range");
  }
  CMatrix drho;
  if (model.all_unitary()) {
    const CMatrix h_prime = generator_derivative(model, mu, theta, tol);
    const CMatrix rho = evolve_matrix(model, theta, tol);
    drho = Complex(0.0, -1.0) * commutator(h_prime, rho);
  } else {
    ParamVector up = theta, down = theta;
    up[static_cast<std::size_t>(mu)] += tol.fd_step;
    down[static_cast<std::size_t>(mu)] -= tol.fd_step;
    drho = (evolve_matrix(model, up, tol) - evolve_matrix(model, down, tol)) /
           (2.0 * tol.fd_step);
  }
  if ((drho - drho.adjoint()).cwiseAbs().maxCoeff() > tol.derivative_sym ||
      std::abs(drho.trace()) > tol.derivative_sym) {
    throw NumericalError("state_derivative: result is not Hermitian traceless");
  }
  return drho;
}

std::vector<CMatrix> state_derivatives(const NetworkModel& model, const ParamVector& theta,
                                       const Tolerances& tol) {
  std::vector<CMatrix> out;
  out.reserve(theta.size());
  for (int mu = 0; mu < model.node_count(); ++mu) {
    out.push_back(state_derivative(model, mu, theta, tol));
  }
  return out;
}

bool check_generator_commutation(const NetworkModel& model, const ParamVector& theta,
                                 const Tolerances& tol) {
  require_theta(model, theta);
  for (int mu = 0; mu < model.node_count(); ++mu) {
    const EncodingMap& node = model.node(mu);
    if (std::holds_alternative<MultiplicativeUnitary>(node)) continue;
    if (const auto* g = std::get_if<GeneralUnitary>(&node)) {
      const double h = tol.fd_step;
      const double t = theta[static_cast<std::size_t>(mu)];
      CMatrix ham = general_hamiltonian(*g, t, tol);
      CMatrix dh = (general_hamiltonian(*g, t + h, tol) -
                    general_hamiltonian(*g, t - h, tol)) /
                   (2.0 * h);
      if (operator_norm(commutator(dh, ham)) > tol.commute) return false;
      continue;
    }
    throw UnsupportedEncoding(
        "check_generator_commutation: Kraus-encoded node has no generator");
  }
  return true;
}

}  // namespace qnet
