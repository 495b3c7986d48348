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

#include <doctest.h>

#include <cmath>

#include "qnet/analysis.hpp"
#include "qnet/model.hpp"
#include "qnet/protocol.hpp"
#include "test_util.hpp"

using namespace qnet;
using namespace qnet::testing;

namespace {

/// θ-linear amplitude-damping node, used to exercise the Kraus fallback.
KrausEncoding damping_node() {
  return KrausEncoding{2, [](double t) {
                         const double eta = 0.1 + 0.3 * t;  // stays in (0,1) near t≈0.5
                         CMatrix a1 = CMatrix::Zero(2, 2), a2 = CMatrix::Zero(2, 2);
                         a1(0, 0) = 1.0;
                         a1(1, 1) = std::sqrt(1.0 - eta);
                         a2(0, 1) = std::sqrt(eta);
                         return std::vector<CMatrix>{a1, a2};
                       }};
}

}  // namespace

TEST_CASE("local_unitary of sigma_z/2 is the frozen diagonal phase pair") {
  const double theta = 0.7;
  CMatrix u = local_unitary(MultiplicativeUnitary{sigma_z_half(), 1}, theta);
  CHECK(std::abs(u(0, 0) - std::exp(Complex(0, -theta / 2))) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::exp(Complex(0, theta / 2))) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-15);
  CHECK_THROWS_AS(local_unitary(damping_node(), theta), UnsupportedEncoding);
}

TEST_CASE("sampling_unitary is the tensor of per-slot local unitaries") {
  const ParamVector theta{0.3, 0.9};
  NetworkModel model = multiplicative_model(sigma_z_half(), {1, 2}, ghz_state(3, 0.6, 0.8));
  CMatrix u = sampling_unitary(model, theta);
  CMatrix u0 = local_unitary(model.node(0), 0.3);
  CMatrix u1 = local_unitary(model.node(1), 0.9);
  CHECK(max_abs(u - tensor({u0, u1, u1})) < 1e-13);  // weight-2 node: two copies
  CHECK(max_abs(u * u.adjoint() - CMatrix::Identity(8, 8)) < 1e-13);
}

TEST_CASE("evolve conjugates by the sampling unitary for unitary models") {
  Rng rng(21);
  NodeDims dims({2, 2});
  DensityState probe(rng.density(4, 0.05), dims);
  NetworkModel model = multiplicative_model(sigma_z_half(), {1, 1}, probe);
  const ParamVector theta{0.4, 1.1};
  CMatrix u = sampling_unitary(model, theta);
  CHECK(max_abs(evolve(model, theta).matrix() - u * probe.matrix() * u.adjoint()) < 1e-12);
}

TEST_CASE("evolve applies Kraus nodes as channels") {
  // One damping node next to a unitary node; oracle built by hand.
  NodeDims dims({2, 2});
  DensityState probe = ghz_state(2, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  NetworkModel model({EncodingMap{MultiplicativeUnitary{sigma_z_half(), 1}},
                      EncodingMap{damping_node()}},
                     probe);
  const ParamVector theta{0.5, 0.5};

  CMatrix u0 = local_unitary(model.node(0), 0.5);
  CMatrix lifted_u = tensor({u0, CMatrix::Identity(2, 2)});
  CMatrix stage1 = lifted_u * probe.matrix() * lifted_u.adjoint();
  const auto kraus = damping_node().kraus(0.5);
  CMatrix ref = CMatrix::Zero(4, 4);
  for (const CMatrix& a : kraus) {
    CMatrix k = tensor({CMatrix::Identity(2, 2), a});
    ref += k * stage1 * k.adjoint();
  }
  CHECK(max_abs(evolve(model, theta).matrix() - ref) < 1e-12);
  CHECK_THROWS_AS(sampling_unitary(model, theta), UnsupportedEncoding);
  CHECK_FALSE(model.all_unitary());
}

TEST_CASE("generator_derivative embeds weight-many copies") {
  NetworkModel model =
      multiplicative_model(sigma_z_half(), {2, 1}, ghz_state(3, 0.6, 0.8));
  const ParamVector theta{0.2, 0.8};
  CMatrix h0 = generator_derivative(model, 0, theta);
  NodeDims dims = model.dims();
  CMatrix ref = embed_local(sigma_z_half(), 0, dims) + embed_local(sigma_z_half(), 1, dims);
  CHECK(max_abs(h0 - ref) < 1e-14);
  CMatrix h1 = generator_derivative(model, 1, theta);
  CHECK(max_abs(h1 - embed_local(sigma_z_half(), 2, dims)) < 1e-14);
}

TEST_CASE("general unitary node: derivative by finite differences of H(theta)") {
  CMatrix sz = 2.0 * sigma_z_half();
  // H(θ) = θ² σ_z commutes with itself at all θ; ∂H = 2θ σ_z.
  GeneralUnitary node{2, [sz](double t) { return (t * t) * sz; }};
  DensityState probe = ghz_state(2, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  NetworkModel model({EncodingMap{node}, EncodingMap{MultiplicativeUnitary{sigma_z_half(), 1}}},
                     probe);
  const ParamVector theta{0.7, 0.3};
  CMatrix d0 = generator_derivative(model, 0, theta);
  CHECK(max_abs(d0 - embed_local(1.4 * sz, 0, model.dims())) < 1e-8);
  CHECK(check_generator_commutation(model, theta));
}

TEST_CASE("check_generator_commutation flags non-commuting generators") {
  CMatrix sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  GeneralUnitary node{2, [sx, sz](double t) { return t * sx + sz; }};
  DensityState probe = ghz_state(2, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  NetworkModel model({EncodingMap{node}, EncodingMap{MultiplicativeUnitary{sigma_z_half(), 1}}},
                     probe);
  CHECK_FALSE(check_generator_commutation(model, {0.4, 0.1}));
}

TEST_CASE("state_derivative analytic form matches central differences") {
  Rng rng(22);
  NodeDims dims({2, 2});
  DensityState probe(rng.density(4, 0.05), dims);
  NetworkModel model = multiplicative_model(sigma_z_half(), {1, 1}, probe);
  const ParamVector theta{0.35, 0.8};
  const double h = 1e-5;

  for (int mu = 0; mu < 2; ++mu) {
    ParamVector tp = theta, tm = theta;
    tp[static_cast<std::size_t>(mu)] += h;
    tm[static_cast<std::size_t>(mu)] -= h;
    CMatrix fd =
        (evolve(model, tp).matrix() - evolve(model, tm).matrix()) / (2.0 * h);
    CHECK(max_abs(state_derivative(model, mu, theta) - fd) < 1e-7);
  }
}

TEST_CASE("state_derivative falls back to finite differences for Kraus nodes") {
  DensityState probe = ghz_state(2, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  NetworkModel model({EncodingMap{damping_node()},
                      EncodingMap{MultiplicativeUnitary{sigma_z_half(), 1}}},
                     probe);
  const ParamVector theta{0.5, 0.4};
  CMatrix d0 = state_derivative(model, 0, theta);
  CHECK(max_abs(d0 - d0.adjoint()) < 1e-7);       // Hermitian
  CHECK(std::abs(d0.trace()) < 1e-7);             // traceless
  CHECK(max_abs(d0) > 1e-3);                      // genuinely parameter dependent
  CHECK_THROWS_AS(generator_derivative(model, 0, theta), UnsupportedEncoding);
}

TEST_CASE("NetworkModel slot layout and probe compatibility") {
  NetworkModel model =
      multiplicative_model(sigma_z_half(), {1, 2}, ghz_state(3, 0.6, 0.8));
  CHECK(model.node_count() == 2);
  CHECK(model.node_slot(0) == 0);
  CHECK(model.node_slot(1) == 1);
  CHECK(model.node_slot_count(1) == 2);

  // Probe over 2 slots cannot serve a layout needing 3.
  CHECK_THROWS_AS(
      multiplicative_model(sigma_z_half(), {1, 2},
                           ghz_state(2, 0.6, 0.8)),
      ArgumentError);
}

TEST_CASE("with_probe swaps the state, keeps encodings") {
  NetworkModel model =
      multiplicative_model(sigma_z_half(), {1, 1}, ghz_state(2, 0.6, 0.8));
  DensityState other = ghz_state(2, 0.8, 0.6);
  NetworkModel swapped = model.with_probe(other);
  CHECK(max_abs(swapped.rho0().matrix() - other.matrix()) == 0.0);
  CHECK(swapped.node_count() == 2);
}
