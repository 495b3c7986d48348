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
#include <vector>

#include "qnet/analysis.hpp"
#include "qnet/noise.hpp"
#include "qnet/protocol.hpp"
#include "test_util.hpp"

using namespace qnet;
using namespace qnet::testing;

namespace {

const Complex kInvSqrt2(1.0 / std::sqrt(2.0), 0.0);
const double kPi = 3.14159265358979323846;

NetworkModel ghz_model(int d) {
  std::vector<int> weights(static_cast<std::size_t>(d), 1);
  return multiplicative_model(sigma_z_half(), weights, ghz_state(d, kInvSqrt2, kInvSqrt2));
}

CMatrix plus_projector() {
  CMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

}  // namespace

TEST_CASE("channel constructors validate their inputs") {
  CHECK_THROWS_AS(dephasing(-0.1), ArgumentError);
  CHECK_THROWS_AS(depolarizing(1.1), ArgumentError);
  CHECK_THROWS_AS(amplitude_damping(2.0), ArgumentError);
  CHECK_THROWS_AS(erasure(-1.0), ArgumentError);
  CHECK_THROWS_AS(depolarizing_global(1.5), ArgumentError);

  // Handing over a non-trace-preserving Kraus list must be rejected.
  CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(
      NoiseChannel({half}, 0.5, NoiseChannel::Locality::per_node, "custom"),
      ArgumentError);
  // Global locality is reserved for the depolarizing map.
  CHECK_THROWS_AS(
      NoiseChannel({}, 0.5, NoiseChannel::Locality::global_map, "custom"),
      UnsupportedEncoding);
}

TEST_CASE("single-qubit channel actions, frozen values") {
  NodeDims one_qubit({2});

  SUBCASE("dephasing scales coherences by 1 - 2η") {
    CMatrix out = apply_channel_matrix(plus_projector(), dephasing(0.3), one_qubit);
    CHECK(std::abs(out(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(out(0, 1) - 0.2) < 1e-14);  // 0.5·(1 − 0.6)
    CHECK(std::abs(out(1, 0) - 0.2) < 1e-14);
  }

  SUBCASE("depolarizing Kraus form equals the closed-form map") {
    Rng rng(51);
    const double eta = 0.37;
    for (int rep = 0; rep < 5; ++rep) {
      CMatrix rho = rng.density(2);
      CMatrix via_kraus = apply_channel_matrix(rho, depolarizing(eta), one_qubit);
      CMatrix closed = (1.0 - eta) * rho + (eta / 2.0) * CMatrix::Identity(2, 2);
      CHECK(max_abs(via_kraus - closed) < 1e-12);
    }
  }

  SUBCASE("amplitude damping moves |1⟩ population down and damps coherence") {
    const double eta = 0.4;
    CMatrix excited = CMatrix::Zero(2, 2);
    excited(1, 1) = 1.0;
    CMatrix out = apply_channel_matrix(excited, amplitude_damping(eta), one_qubit);
    CHECK(std::abs(out(0, 0) - eta) < 1e-14);
    CHECK(std::abs(out(1, 1) - (1.0 - eta)) < 1e-14);

    CMatrix coh = apply_channel_matrix(plus_projector(), amplitude_damping(eta),
                                       one_qubit);
    CHECK(std::abs(coh(0, 1) - 0.5 * std::sqrt(1.0 - eta)) < 1e-14);
  }

  SUBCASE("erasure sends lost population to the flag level") {
    const double eta = 0.25;
    NodeDims one_qutrit({3});
    CMatrix rho3 = CMatrix::Zero(3, 3);
    rho3.topLeftCorner(2, 2) = plus_projector();
    CMatrix out = apply_channel_matrix(rho3, erasure(eta), one_qutrit);
    CMatrix expect = (1.0 - eta) * rho3;
    expect(2, 2) = eta;
    CHECK(max_abs(out - expect) < 1e-14);
  }

  SUBCASE("global depolarizing is (1−η)X + η·Tr(X)·1/dim on any matrix") {
    Rng rng(52);
    const double eta = 0.6;
    NodeDims dims({2, 2});
    CMatrix x = rng.cmatrix(4, 4);  // deliberately not a state
    CMatrix out = apply_channel_matrix(x, depolarizing_global(eta), dims);
    CMatrix expect =
        (1.0 - eta) * x + (eta / 4.0) * x.trace() * CMatrix::Identity(4, 4);
    CHECK(max_abs(out - expect) < 1e-12);
  }
}

TEST_CASE("kraus_string tensors the selected operators") {
  NoiseChannel ch = dephasing(0.3);
  CMatrix s = kraus_string(ch, {0, 1});
  CHECK(max_abs(s - kron_oracle(ch.kraus[0], ch.kraus[1])) < 1e-14);

  CHECK_THROWS_AS(kraus_string(ch, {}), ArgumentError);
  CHECK_THROWS_AS(kraus_string(ch, {0, 7}), ArgumentError);
  CHECK_THROWS_AS(kraus_string(depolarizing_global(0.3), {0}), UnsupportedEncoding);
}

TEST_CASE("exhaustive Kraus-string sum equals the sequential channel action") {
  // Σ over all index strings of S ρ S† must reproduce the slot-by-slot
  // application: two independent routes through the same channel.
  Rng rng(53);
  NodeDims dims({2, 2});
  for (const NoiseChannel& ch : {dephasing(0.37), amplitude_damping(0.41)}) {
    CMatrix rho = rng.density(4);
    const int nk = static_cast<int>(ch.kraus.size());
    CMatrix summed = CMatrix::Zero(4, 4);
    for (int j = 0; j < nk; ++j) {
      for (int k = 0; k < nk; ++k) {
        CMatrix s = kraus_string(ch, {j, k});
        summed += s * rho * s.adjoint();
      }
    }
    CHECK(max_abs(summed - apply_channel_matrix(rho, ch, dims)) < 1e-12);
  }
}

TEST_CASE("apply_channel: slot targeting, state validation, dimension checks") {
  Rng rng(54);
  NodeDims dims({2, 2});
  DensityState rho(rng.density(4), dims);

  SUBCASE("slot subset acts only on the chosen factor") {
    NoiseChannel ch = dephasing(0.3);
    DensityState out = apply_channel(rho, ch, {0});
    CMatrix expect = CMatrix::Zero(4, 4);
    for (const CMatrix& a : ch.kraus) {
      CMatrix lifted = kron_oracle(a, CMatrix::Identity(2, 2));
      expect += lifted * rho.matrix() * lifted.adjoint();
    }
    CHECK(max_abs(out.matrix() - expect) < 1e-12);
  }

  SUBCASE("every channel preserves trace and positivity") {
    for (const NoiseChannel& ch :
         {dephasing(0.4), depolarizing(0.4), amplitude_damping(0.4)}) {
      DensityState out = apply_channel(rho, ch);  // ctor re-validates
      CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
    }
    DensityState out = apply_channel(rho, depolarizing_global(0.4));
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
  }

  SUBCASE("erasure needs qutrit slots") {
    CHECK_THROWS_AS(apply_channel(rho, erasure(0.4)), ArgumentError);
    NetworkModel embedded = embed_for_erasure(ghz_model(2));
    CHECK_NOTHROW(apply_channel(embedded.rho0(), erasure(0.4)));
  }

  SUBCASE("slot index out of range") {
    CHECK_THROWS_AS(apply_channel(rho, dephasing(0.3), {2}), ArgumentError);
  }
}

TEST_CASE("apply_channel_matrix is linear in its matrix argument") {
  Rng rng(55);
  NodeDims dims({2, 2});
  CMatrix x = rng.cmatrix(4, 4);
  CMatrix y = rng.cmatrix(4, 4);
  const Complex a(1.3, -0.4), b(-0.2, 2.1);
  for (const NoiseChannel& ch :
       {dephasing(0.3), depolarizing(0.3), amplitude_damping(0.3),
        depolarizing_global(0.3)}) {
    CMatrix lhs = apply_channel_matrix(a * x + b * y, ch, dims);
    CMatrix rhs = a * apply_channel_matrix(x, ch, dims) +
                  b * apply_channel_matrix(y, ch, dims);
    CHECK(max_abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("Kraus/sampling commutation diagnostics at θ = π/2, η = 0.5") {
  NetworkModel model = ghz_model(2);
  const ParamVector theta{kPi / 2.0, kPi / 2.0};
  const double s8 = 2.0 * std::sin(kPi / 8.0);

  SUBCASE("dephasing commutes operator by operator") {
    CHECK(kraus_commutator_norm(dephasing(0.5), model, theta) < 1e-12);
    CHECK(commutes_with_sampling(dephasing(0.5), model, theta));
  }

  SUBCASE("amplitude damping: literal defect 2√η·sin(θ/2) = 1") {
    CHECK(kraus_commutator_norm(amplitude_damping(0.5), model, theta) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(commutes_with_sampling(amplitude_damping(0.5), model, theta));
  }

  SUBCASE("depolarizing: literal defect 2√(η/4)·sin(θ/2) = 0.5") {
    CHECK(kraus_commutator_norm(depolarizing(0.5), model, theta) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK_FALSE(commutes_with_sampling(depolarizing(0.5), model, theta));
  }

  SUBCASE("erasure against the padded unitary: defect 2√η·sin(θ/4)") {
    const double expect = std::sqrt(0.5) * s8;
    CHECK(kraus_commutator_norm(erasure(0.5), model, theta) ==
          doctest::Approx(expect).epsilon(1e-10));
    CHECK_FALSE(commutes_with_sampling(erasure(0.5), model, theta));
    // Same number when the model is already lifted to qutrits.
    CHECK(kraus_commutator_norm(erasure(0.5), embed_for_erasure(model), theta) ==
          doctest::Approx(expect).epsilon(1e-10));
  }

  SUBCASE("global maps commute with any unitary conjugation") {
    CHECK(kraus_commutator_norm(depolarizing_global(0.5), model, theta) == 0.0);
    CHECK(commutes_with_sampling(depolarizing_global(0.5), model, theta));
  }

  SUBCASE("per-Kraus phases are gauge: phase-optimal defect") {
    // Dephasing, damping, and erasure all commute once each Kraus operator
    // may absorb a phase; depolarizing genuinely does not (σ_x swaps the
    // two sampling phases).
    CHECK(kraus_phase_commutator_norm(dephasing(0.5), model, theta) < 1e-10);
    CHECK(kraus_phase_commutator_norm(amplitude_damping(0.5), model, theta) < 1e-10);
    CHECK(kraus_phase_commutator_norm(erasure(0.5), model, theta) < 1e-10);
    CHECK(kraus_phase_commutator_norm(depolarizing(0.5), model, theta) ==
          doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("noise before sampling equals noise after sampling as maps") {
  // All four standard channels commute with the σ_z/2 sampling as linear
  // maps (phase cancellation within each Kraus string, or full unitary
  // covariance for depolarizing), so the stage does not matter — for any
  // probe, not just GHZ.
  Rng rng(56);
  const ParamVector theta{0.7, 1.9};
  std::vector<int> weights{1, 1};

  DensityState probe(rng.density(4, 0.02), NodeDims({2, 2}));
  NetworkModel model = multiplicative_model(sigma_z_half(), weights, probe);

  for (const NoiseChannel& ch :
       {dephasing(0.3), depolarizing(0.3), amplitude_damping(0.3),
        depolarizing_global(0.3)}) {
    DensityState before = noisy_state(model, ch, NoiseStage::before_sampling, theta);
    DensityState after = noisy_state(model, ch, NoiseStage::after_sampling, theta);
    CHECK(max_abs(before.matrix() - after.matrix()) < 1e-12);
  }

  NetworkModel lifted = embed_for_erasure(model);
  DensityState before = noisy_state(lifted, erasure(0.3), NoiseStage::before_sampling, theta);
  DensityState after = noisy_state(lifted, erasure(0.3), NoiseStage::after_sampling, theta);
  CHECK(max_abs(before.matrix() - after.matrix()) < 1e-12);
}

TEST_CASE("privacy_after_noise") {
  const ParamVector theta3{0.2, 0.5, 0.8};
  const WeightVector w3{1.0, 1.0, 1.0};

  SUBCASE("GHZ stays private under every standard channel and stage") {
    NetworkModel model = ghz_model(3);
    for (double eta : {0.0, 0.5, 1.0}) {
      for (NoiseStage stage :
           {NoiseStage::before_sampling, NoiseStage::after_sampling}) {
        CHECK(privacy_after_noise(model, dephasing(eta), stage, theta3, w3).is_private);
        CHECK(privacy_after_noise(model, depolarizing(eta), stage, theta3, w3).is_private);
        CHECK(privacy_after_noise(model, amplitude_damping(eta), stage, theta3, w3)
                  .is_private);
        CHECK(privacy_after_noise(model, depolarizing_global(eta), stage, theta3, w3)
                  .is_private);
        CHECK(privacy_after_noise(embed_for_erasure(model), erasure(eta), stage, theta3,
                                  w3)
                  .is_private);
      }
    }
  }

  SUBCASE("a product probe stays non-private under weak noise") {
    CVector pp(4);
    pp << 0.5, 0.5, 0.5, 0.5;
    NetworkModel model = multiplicative_model(
        sigma_z_half(), {1, 1}, DensityState::from_vector(pp, NodeDims({2, 2})));
    const ParamVector theta{0.4, 0.9};
    CHECK_FALSE(privacy_after_noise(model, dephasing(0.3), NoiseStage::after_sampling,
                                    theta, {1.0, 1.0})
                    .is_private);
    // Full global depolarization wipes the derivatives entirely: trivially
    // private because no information about anything survives.
    CHECK(privacy_after_noise(model, depolarizing_global(1.0),
                              NoiseStage::after_sampling, theta, {1.0, 1.0})
              .is_private);
  }
}

TEST_CASE("amplitude-damped GHZ splits into corners plus diagonal") {
  for (int d = 2; d <= 4; ++d) {
    NetworkModel model = ghz_model(d);
    ParamVector theta(static_cast<std::size_t>(d), 0.3);
    for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      DensityState out =
          noisy_state(model, amplitude_damping(eta), NoiseStage::after_sampling, theta);
      AdDecomposition dec = ad_structure_decompose(out.matrix());
      CHECK(dec.residual <= 1e-12);
      const long n = out.matrix().rows();
      // Coherence magnitude (1−η)^{d/2}·|αβ| with |αβ| = ½ here.
      const double expect = 0.5 * std::pow(1.0 - eta, d / 2.0);
      CHECK(std::abs(std::abs(dec.coherence_part(0, n - 1)) - expect) < 1e-10);
      // The two parts carry the whole unit trace between them.
      const double tr = (dec.coherence_part + dec.diagonal_part).trace().real();
      CHECK(tr == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(ad_structure_decompose(CMatrix::Zero(1, 1)), ArgumentError);
}

TEST_CASE("matrix_structure_predicates on the damping Kraus shapes") {
  const double eta = 0.4;
  NoiseChannel ad = amplitude_damping(eta);

  StructurePredicates a1 = matrix_structure_predicates(ad.kraus[0]);
  CHECK(a1.is_generalized_permutation);
  CHECK(a1.is_upper_triangular);
  CHECK_FALSE(a1.first_entry_zero);

  StructurePredicates a2 = matrix_structure_predicates(ad.kraus[1]);
  CHECK(a2.is_generalized_permutation);
  CHECK(a2.is_upper_triangular);
  CHECK(a2.first_entry_zero);

  CMatrix dense = CMatrix::Ones(2, 2);
  StructurePredicates p = matrix_structure_predicates(dense);
  CHECK_FALSE(p.is_generalized_permutation);
  CHECK_FALSE(p.is_upper_triangular);
  CHECK_FALSE(p.first_entry_zero);

  CHECK_THROWS_AS(matrix_structure_predicates(CMatrix::Zero(2, 3)), ArgumentError);
}

TEST_CASE("embed_for_erasure lifts qubits to qutrits with an idle flag level") {
  NetworkModel model = ghz_model(2);
  NetworkModel lifted = embed_for_erasure(model);

  CHECK(lifted.dims() == NodeDims({3, 3}));
  // Bit string 11 maps to trit string 11 = global index 4.
  const CMatrix& rho3 = lifted.rho0().matrix();
  CHECK(std::abs(rho3(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(rho3(4, 4) - 0.5) < 1e-14);
  CHECK(std::abs(rho3(0, 4) - 0.5) < 1e-14);
  // Flag-level rows stay empty.
  for (long r = 0; r < 9; ++r) {
    if (r == 0 || r == 4) continue;
    CHECK(rho3.row(r).cwiseAbs().maxCoeff() < 1e-14);
  }

  // The local sampling block is U ⊕ 1.
  const ParamVector theta{0.6, 1.1};
  CMatrix u3 = local_unitary(lifted.node(0), theta[0]);
  CHECK(std::abs(u3(0, 0) - std::exp(Complex(0, -0.3))) < 1e-12);
  CHECK(std::abs(u3(1, 1) - std::exp(Complex(0, 0.3))) < 1e-12);
  CHECK(std::abs(u3(2, 2) - 1.0) < 1e-12);

  // Evolution restricted to the qubit block matches the original model.
  CMatrix r2 = evolve(model, theta).matrix();
  CMatrix r3 = evolve(lifted, theta).matrix();
  const long map2[4] = {0, 1, 3, 4};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      CHECK(std::abs(r3(map2[a], map2[b]) - r2(a, b)) < 1e-12);
    }
  }

  // Kraus-encoded nodes cannot be lifted.
  KrausEncoding node;
  node.local_dim = 2;
  node.kraus = [](double) {
    return std::vector<CMatrix>{CMatrix::Identity(2, 2)};
  };
  CVector plus(2);
  plus << kInvSqrt2, kInvSqrt2;
  NetworkModel kraus_model({node}, DensityState::from_vector(plus, NodeDims({2})));
  CHECK_THROWS_AS(embed_for_erasure(kraus_model), UnsupportedEncoding);
}
