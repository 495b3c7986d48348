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

#include "qnet/noise.hpp"

#include <cmath>
#include <utility>

namespace qnet {

namespace {

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

void require_eta(double eta, const char* what) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw ArgumentError(std::string(what) + ": eta must lie in [0, 1]");
  }
}

/// Per-slot linear Kraus action Σ_k (A_k at slot) X (A_k at slot)†.
CMatrix apply_kraus_at_slot(const CMatrix& x, const std::vector<CMatrix>& kraus,
                            int slot, const NodeDims& dims) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (const CMatrix& a : kraus) {
    CMatrix lifted = embed_local(a, slot, dims);
    out += lifted * x * lifted.adjoint();
  }
  return out;
}

}  // namespace

NoiseChannel::NoiseChannel(std::vector<CMatrix> kraus_in, double eta_in,
                           Locality locality_in, std::string name_in,
                           const Tolerances& tol)
    : kraus(std::move(kraus_in)), eta(eta_in), locality(locality_in),
      name(std::move(name_in)) {
  require_eta(eta, "NoiseChannel");
  if (locality == Locality::global_map) {
    if (name != "depolarizing") {
      throw UnsupportedEncoding("NoiseChannel: only global depolarizing is defined");
    }
    return;
  }
  if (kraus.empty()) throw ArgumentError("NoiseChannel: empty Kraus list");
  const long dim = kraus.front().rows();
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const CMatrix& a : kraus) {
    if (a.rows() != dim || a.cols() != dim) {
      throw ArgumentError("NoiseChannel: Kraus operators must share one square dim");
    }
    sum += a.adjoint() * a;
  }
  if ((sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol.kraus_complete) {
    throw ArgumentError("NoiseChannel: Kraus set is not trace preserving");
  }
}

NoiseChannel dephasing(double eta) {
  require_eta(eta, "dephasing");
  std::vector<CMatrix> ops;
  ops.push_back(std::sqrt(1.0 - eta) * CMatrix::Identity(2, 2));
  ops.push_back(std::sqrt(eta) * pauli_z());
  return NoiseChannel(std::move(ops), eta, NoiseChannel::Locality::per_node, "dephasing");
}

NoiseChannel depolarizing(double eta) {
  require_eta(eta, "depolarizing");
  std::vector<CMatrix> ops;
  ops.push_back(std::sqrt(eta / 4.0) * pauli_x());
  ops.push_back(std::sqrt(eta / 4.0) * pauli_y());
  ops.push_back(std::sqrt(eta / 4.0) * pauli_z());
  ops.push_back(std::sqrt(1.0 - 3.0 * eta / 4.0) * CMatrix::Identity(2, 2));
  return NoiseChannel(std::move(ops), eta, NoiseChannel::Locality::per_node,
                      "depolarizing");
}

NoiseChannel depolarizing_global(double eta) {
  require_eta(eta, "depolarizing_global");
  return NoiseChannel({}, eta, NoiseChannel::Locality::global_map, "depolarizing");
}

NoiseChannel amplitude_damping(double eta) {
  require_eta(eta, "amplitude_damping");
  CMatrix a1 = CMatrix::Zero(2, 2), a2 = CMatrix::Zero(2, 2);
  a1(0, 0) = 1.0;
  a1(1, 1) = std::sqrt(1.0 - eta);
  a2(0, 1) = std::sqrt(eta);
  return NoiseChannel({a1, a2}, eta, NoiseChannel::Locality::per_node,
                      "amplitude_damping");
}

NoiseChannel erasure(double eta) {
  require_eta(eta, "erasure");
  CMatrix a1 = CMatrix::Zero(3, 3), a2 = CMatrix::Zero(3, 3), a3 = CMatrix::Zero(3, 3),
          a4 = CMatrix::Zero(3, 3);
  a1(0, 0) = a1(1, 1) = std::sqrt(1.0 - eta);
  a2(2, 2) = 1.0;                // keeps an already-erased flag in place
  a3(2, 0) = std::sqrt(eta);     // |0⟩ population lost to the flag level
  a4(2, 1) = std::sqrt(eta);     // |1⟩ population lost to the flag level
  return NoiseChannel({a1, a2, a3, a4}, eta, NoiseChannel::Locality::per_node, "erasure");
}

NetworkModel embed_for_erasure(const NetworkModel& model) {
  std::vector<EncodingMap> lifted;
  for (const EncodingMap& node : model.nodes()) {
    if (const auto* m = std::get_if<MultiplicativeUnitary>(&node)) {
      if (m->generator.rows() != 2) {
        throw UnsupportedEncoding("embed_for_erasure: only qubit nodes supported");
      }
      CMatrix h3 = CMatrix::Zero(3, 3);
      h3.topLeftCorner(2, 2) = m->generator;
      lifted.push_back(MultiplicativeUnitary{h3, m->weight});
      continue;
    }
    if (const auto* g = std::get_if<GeneralUnitary>(&node)) {
      if (g->local_dim != 2) {
        throw UnsupportedEncoding("embed_for_erasure: only qubit nodes supported");
      }
      auto ham = g->hamiltonian;
      lifted.push_back(GeneralUnitary{3, [ham](double t) {
                                        CMatrix h3 = CMatrix::Zero(3, 3);
                                        h3.topLeftCorner(2, 2) = ham(t);
                                        return h3;
                                      }});
      continue;
    }
    throw UnsupportedEncoding("embed_for_erasure: Kraus-encoded nodes unsupported");
  }

  const int n = model.dims().count();
  for (int i = 0; i < n; ++i) {
    if (model.dims().dim(i) != 2) {
      throw UnsupportedEncoding("embed_for_erasure: all slots must be qubits");
    }
  }
  const long old_dim = model.dims().total();
  long new_dim = 1;
  for (int i = 0; i < n; ++i) new_dim *= 3;

  // Basis map: bit string → trit string with the flag level unused.
  std::vector<long> index_map(static_cast<std::size_t>(old_dim));
  for (long i = 0; i < old_dim; ++i) {
    long j = 0;
    for (int k = 0; k < n; ++k) {
      const long bit = (i >> (n - 1 - k)) & 1;
      j = j * 3 + bit;
    }
    index_map[static_cast<std::size_t>(i)] = j;
  }
  CMatrix rho3 = CMatrix::Zero(new_dim, new_dim);
  const CMatrix& rho2 = model.rho0().matrix();
  for (long r = 0; r < old_dim; ++r) {
    for (long c = 0; c < old_dim; ++c) {
      rho3(index_map[static_cast<std::size_t>(r)],
           index_map[static_cast<std::size_t>(c)]) = rho2(r, c);
    }
  }
  NodeDims dims3(std::vector<int>(static_cast<std::size_t>(n), 3));
  return NetworkModel(std::move(lifted), DensityState(std::move(rho3), dims3));
}

CMatrix kraus_string(const NoiseChannel& channel, const std::vector<int>& indices) {
  if (channel.locality != NoiseChannel::Locality::per_node) {
    throw UnsupportedEncoding("kraus_string: global maps have no Kraus factorization");
  }
  if (indices.empty()) throw ArgumentError("kraus_string: empty index list");
  std::vector<CMatrix> factors;
  factors.reserve(indices.size());
  for (int k : indices) {
    if (k < 0 || k >= static_cast<int>(channel.kraus.size())) {
      throw ArgumentError("kraus_string: Kraus index out of range");
    }
    factors.push_back(channel.kraus[static_cast<std::size_t>(k)]);
  }
  return tensor(factors);
}

CMatrix apply_channel_matrix(const CMatrix& m, const NoiseChannel& channel,
                             const NodeDims& dims, const std::vector<int>& slots) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw ArgumentError("apply_channel_matrix: matrix does not match the slot layout");
  }
  if (channel.locality == NoiseChannel::Locality::global_map) {
    const double dim = static_cast<double>(dims.total());
    return (1.0 - channel.eta) * m +
           (channel.eta / dim) * m.trace() * CMatrix::Identity(m.rows(), m.cols());
  }
  std::vector<int> targets = slots;
  if (targets.empty()) {
    for (int i = 0; i < dims.count(); ++i) targets.push_back(i);
  }
  const long kdim = channel.kraus.front().rows();
  CMatrix out = m;
  for (int slot : targets) {
    if (slot < 0 || slot >= dims.count()) {
      throw ArgumentError("apply_channel_matrix: slot index out of range");
    }
    if (dims.dim(slot) != kdim) {
      throw ArgumentError("apply_channel_matrix: channel dim does not match the slot");
    }
    out = apply_kraus_at_slot(out, channel.kraus, slot, dims);
  }
  return out;
}

DensityState apply_channel(const DensityState& rho, const NoiseChannel& channel,
                           const std::vector<int>& slots, const Tolerances& tol) {
  return DensityState(apply_channel_matrix(rho.matrix(), channel, rho.dims(), slots),
                      rho.dims(), tol);
}

namespace {

/// Embedded sampling unitary the channel is compared against at one node:
/// the node's own local unitary, padded with an identity row/column when
/// the channel lives one dimension higher (erasure's flag level).
CMatrix comparison_unitary(const NoiseChannel& channel, const NetworkModel& model,
                           int mu, double theta_mu) {
  CMatrix u = local_unitary(model.node(mu), theta_mu);
  const long kdim = channel.kraus.front().rows();
  if (kdim == u.rows()) return u;
  if (kdim == u.rows() + 1) {
    CMatrix padded = CMatrix::Identity(kdim, kdim);
    padded.topLeftCorner(u.rows(), u.cols()) = u;
    return padded;
  }
  throw ArgumentError("commutes_with_sampling: channel/node dimension mismatch");
}

}  // namespace

double kraus_commutator_norm(const NoiseChannel& channel, const NetworkModel& model,
                             const ParamVector& theta) {
  if (channel.locality == NoiseChannel::Locality::global_map) return 0.0;
  if (static_cast<int>(theta.size()) != model.node_count()) {
    throw ArgumentError("kraus_commutator_norm: theta length mismatch");
  }
  double worst = 0.0;
  for (int mu = 0; mu < model.node_count(); ++mu) {
    CMatrix u = comparison_unitary(channel, model, mu,
                                   theta[static_cast<std::size_t>(mu)]);
    for (const CMatrix& a : channel.kraus) {
      worst = std::max(worst, operator_norm(commutator(a, u)));
    }
  }
  return worst;
}

double kraus_phase_commutator_norm(const NoiseChannel& channel, const NetworkModel& model,
                                   const ParamVector& theta) {
  if (channel.locality == NoiseChannel::Locality::global_map) return 0.0;
  if (static_cast<int>(theta.size()) != model.node_count()) {
    throw ArgumentError("kraus_phase_commutator_norm: theta length mismatch");
  }
  double worst = 0.0;
  for (int mu = 0; mu < model.node_count(); ++mu) {
    CMatrix u = comparison_unitary(channel, model, mu,
                                   theta[static_cast<std::size_t>(mu)]);
    for (const CMatrix& a : channel.kraus) {
      const CMatrix au = a * u;
      const CMatrix ua = u * a;
      // Kraus phases are unobservable gauge: compare A U against U A up to
      // the Frobenius-optimal phase.
      const Complex c = (ua.adjoint() * au).trace();
      const Complex phase = std::abs(c) > 0.0 ? c / std::abs(c) : Complex(1.0, 0.0);
      worst = std::max(worst, operator_norm(au - phase * ua));
    }
  }
  return worst;
}

bool commutes_with_sampling(const NoiseChannel& channel, const NetworkModel& model,
                            const ParamVector& theta, const Tolerances& tol) {
  return kraus_commutator_norm(channel, model, theta) <= tol.commute;
}

DensityState noisy_state(const NetworkModel& model, const NoiseChannel& channel,
                         NoiseStage stage, const ParamVector& theta,
                         const Tolerances& tol) {
  if (stage == NoiseStage::before_sampling) {
    return evolve(model.with_probe(apply_channel(model.rho0(), channel, {}, tol)), theta,
                  tol);
  }
  return apply_channel(evolve(model, theta, tol), channel, {}, tol);
}

PrivacyVerdict privacy_after_noise(const NetworkModel& model, const NoiseChannel& channel,
                                   NoiseStage stage, const ParamVector& theta,
                                   const WeightVector& w, double tol) {
  std::vector<CMatrix> drhos;
  if (stage == NoiseStage::after_sampling) {
    // The channel is parameter independent and linear, so it passes
    // through the derivative: ∂_μ Λ(ρ_Θ) = Λ(∂_μ ρ_Θ).
    drhos = state_derivatives(model, theta);
    for (CMatrix& d : drhos) {
      d = apply_channel_matrix(d, channel, model.dims());
    }
  } else {
    NetworkModel modified = model.with_probe(apply_channel(model.rho0(), channel));
    drhos = state_derivatives(modified, theta);
  }
  return derivative_norm_condition(drhos, w, tol);
}

AdDecomposition ad_structure_decompose(const CMatrix& rho_out) {
  if (rho_out.rows() != rho_out.cols() || rho_out.rows() < 2) {
    throw ArgumentError("ad_structure_decompose: matrix must be square, dim >= 2");
  }
  const long n = rho_out.rows();
  AdDecomposition dec;
  dec.coherence_part = CMatrix::Zero(n, n);
  dec.coherence_part(0, 0) = rho_out(0, 0);
  dec.coherence_part(0, n - 1) = rho_out(0, n - 1);
  dec.coherence_part(n - 1, 0) = rho_out(n - 1, 0);
  dec.coherence_part(n - 1, n - 1) = rho_out(n - 1, n - 1);
  dec.diagonal_part = CMatrix::Zero(n, n);
  for (long i = 1; i < n - 1; ++i) dec.diagonal_part(i, i) = rho_out(i, i);
  dec.residual =
      (rho_out - dec.coherence_part - dec.diagonal_part).cwiseAbs().maxCoeff();
  return dec;
}

StructurePredicates matrix_structure_predicates(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ArgumentError("matrix_structure_predicates: matrix must be square");
  }
  StructurePredicates p;
  p.first_entry_zero = std::abs(m(0, 0)) <= tol.zero_entry;

  p.is_upper_triangular = true;
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < r; ++c) {
      if (std::abs(m(r, c)) > tol.zero_entry) p.is_upper_triangular = false;
    }
  }

  p.is_generalized_permutation = true;
  for (long r = 0; r < m.rows(); ++r) {
    int nonzero = 0;
    for (long c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) > tol.zero_entry) ++nonzero;
    }
    if (nonzero > 1) p.is_generalized_permutation = false;
  }
  for (long c = 0; c < m.cols(); ++c) {
    int nonzero = 0;
    for (long r = 0; r < m.rows(); ++r) {
      if (std::abs(m(r, c)) > tol.zero_entry) ++nonzero;
    }
    if (nonzero > 1) p.is_generalized_permutation = false;
  }
  return p;
}

}  // namespace qnet
