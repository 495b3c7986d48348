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
#include "qnet/privacy.hpp"
#include "qnet/protocol.hpp"
#include "test_util.hpp"

using namespace qnet;
using namespace qnet::testing;

namespace {

const Complex kInvSqrt2(1.0 / std::sqrt(2.0), 0.0);

NetworkModel ghz_model(int d, Complex alpha = kInvSqrt2, Complex beta = kInvSqrt2) {
  std::vector<int> weights(static_cast<std::size_t>(d), 1);
  return multiplicative_model(sigma_z_half(), weights, ghz_state(d, alpha, beta));
}

/// α|0⟩^{⊗N} + β|1⟩^{⊗N} over the expanded slots of integer node weights.
NetworkModel weighted_model(const std::vector<int>& weights) {
  std::vector<Complex> coeffs{kInvSqrt2, kInvSqrt2};
  DensityState probe =
      weighted_eigen_state(weights, coeffs, CMatrix::Identity(2, 2));
  return multiplicative_model(sigma_z_half(), weights, probe);
}

NetworkModel product_plus_model() {
  CVector pp(4);
  pp << 0.5, 0.5, 0.5, 0.5;  // |+⟩|+⟩
  DensityState probe = DensityState::from_vector(pp, NodeDims({2, 2}));
  return multiplicative_model(sigma_z_half(), {1, 1}, probe);
}

}  // namespace

TEST_CASE("build_W is the rank-one weight outer product") {
  RMatrix w = build_W({1.0, 2.0});
  RMatrix expect(2, 2);
  expect << 1.0, 2.0, 2.0, 4.0;
  CHECK(max_abs((w - expect).cast<Complex>()) < 1e-15);
  CHECK_THROWS_AS(build_W({}), ArgumentError);
  CHECK_THROWS_AS(build_W({0.0, 0.0}), ArgumentError);
}

TEST_CASE("rank_one_privacy_check accepts exact rank-one matrices") {
  SUBCASE("balanced GHZ: Q = ones, unit scale") {
    FisherMatrix q(RMatrix::Ones(3, 3), FisherMatrix::Kind::quantum, {});
    PrivacyVerdict v = rank_one_privacy_check(q, {1.0, 1.0, 1.0});
    CHECK(v.is_private);
    CHECK(v.residual_defined);
    CHECK(v.scale_a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.residual_rel < 1e-12);
  }

  SUBCASE("unbalanced GHZ model: scale 4|αβ|² = 0.9216") {
    NetworkModel model = ghz_model(2, Complex(0.6, 0.0), Complex(0.8, 0.0));
    const ParamVector theta{0.4, 1.1};
    FisherMatrix q = model_qfim(model, theta);
    PrivacyVerdict v = rank_one_privacy_check(q, {1.0, 1.0});
    CHECK(v.is_private);
    CHECK(v.scale_a == doctest::Approx(0.9216).epsilon(1e-9));
  }

  SUBCASE("general weights") {
    RVector wv(3);
    wv << 1.0, 2.0, 3.0;
    RMatrix q0 = 0.7 * wv * wv.transpose();
    FisherMatrix q(q0, FisherMatrix::Kind::quantum, {});
    PrivacyVerdict v = rank_one_privacy_check(q, {1.0, 2.0, 3.0});
    CHECK(v.is_private);
    CHECK(v.scale_a == doctest::Approx(0.7).epsilon(1e-12));
  }
}

TEST_CASE("rank_one_privacy_check rejects non-private information matrices") {
  SUBCASE("identity (independent product probe)") {
    FisherMatrix q(RMatrix::Identity(2, 2), FisherMatrix::Kind::quantum, {});
    PrivacyVerdict v = rank_one_privacy_check(q, {1.0, 1.0});
    CHECK_FALSE(v.is_private);
    // a = (wᵀQw)/(wᵀw)² = 2/4; residual ‖I − ½·ones‖_F/‖I‖_F = 1/√2.
    CHECK(v.scale_a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v.residual_rel == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  }

  SUBCASE("small leakage orthogonal to w is caught at tight tolerance") {
    RVector wv(2), vv(2);
    wv << 1.0, 1.0;
    vv << 1.0, -1.0;
    RMatrix q0 = wv * wv.transpose() + 1e-3 * vv * vv.transpose();
    FisherMatrix q(q0, FisherMatrix::Kind::quantum, {});
    CHECK_FALSE(rank_one_privacy_check(q, {1.0, 1.0}).is_private);
    CHECK(rank_one_privacy_check(q, {1.0, 1.0}, 1e-2).is_private);
  }

  SUBCASE("zero matrix: residual undefined") {
    FisherMatrix q(RMatrix::Zero(2, 2), FisherMatrix::Kind::quantum, {});
    PrivacyVerdict v = rank_one_privacy_check(q, {1.0, 1.0});
    CHECK_FALSE(v.is_private);
    CHECK_FALSE(v.residual_defined);
  }

  SUBCASE("argument validation") {
    FisherMatrix q(RMatrix::Ones(2, 2), FisherMatrix::Kind::quantum, {});
    CHECK_THROWS_AS(rank_one_privacy_check(q, {1.0, 1.0, 1.0}), ArgumentError);
    CHECK_THROWS_AS(rank_one_privacy_check(q, {0.0, 0.0}), ArgumentError);
  }
}

TEST_CASE("derivative_norm_condition: GHZ-type states are exactly proportional") {
  SUBCASE("equal weights: all derivatives coincide") {
    NetworkModel model = ghz_model(3);
    const ParamVector theta{0.2, 0.5, 0.8};
    auto drhos = state_derivatives(model, theta);
    PrivacyVerdict v = derivative_norm_condition(drhos, {1.0, 1.0, 1.0});
    CHECK(v.is_private);
    CHECK(v.residual_rel < 1e-10);
    for (const auto& p : v.pairs) {
      CHECK(p.weight_gap == 0.0);
      CHECK_FALSE(p.ratio_defined);
      CHECK(p.norm_diff < 1e-10);
    }
  }

  SUBCASE("weights (1,2): norm gap equals weight gap times a common constant") {
    NetworkModel model = weighted_model({1, 2});
    const ParamVector theta{0.3, 0.7};
    auto drhos = state_derivatives(model, theta);
    PrivacyVerdict v = derivative_norm_condition(drhos, {1.0, 2.0});
    CHECK(v.is_private);
    REQUIRE(v.pairs.size() == 1);
    CHECK(v.pairs[0].ratio_defined);
    // Balanced two-term probe with σ_z/2: ‖∂_μρ − ∂_νρ‖₁ = |w_μ − w_ν|
    // exactly (corner magnitude ½, local eigenvalue split 1).
    CHECK(v.pairs[0].norm_diff == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(v.scale_a == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("weights (1,2,3): one constant across all three pairs") {
    NetworkModel model = weighted_model({1, 2, 3});
    const ParamVector theta{0.3, 0.7, 1.4};
    auto drhos = state_derivatives(model, theta);
    PrivacyVerdict v = derivative_norm_condition(drhos, {1.0, 2.0, 3.0});
    CHECK(v.is_private);
    CHECK(v.scale_a == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& p : v.pairs) {
      if (p.ratio_defined) CHECK(p.ratio == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("derivative_norm_condition rejects mismatched states") {
  SUBCASE("product probe with equal weights") {
    NetworkModel model = product_plus_model();
    const ParamVector theta{0.4, 0.9};
    auto drhos = state_derivatives(model, theta);
    PrivacyVerdict v = derivative_norm_condition(drhos, {1.0, 1.0});
    CHECK_FALSE(v.is_private);
    CHECK(v.residual_rel > 0.1);  // zero-gap pair with clearly unequal derivatives
  }

  SUBCASE("equal derivatives claimed against unequal weights") {
    NetworkModel model = ghz_model(2);
    const ParamVector theta{0.4, 0.9};
    auto drhos = state_derivatives(model, theta);
    // Gap 1 but vanishing norm: the proportionality breaks entirely.
    CHECK_FALSE(derivative_norm_condition(drhos, {1.0, 2.0}).is_private);
  }

  SUBCASE("count mismatch throws") {
    NetworkModel model = ghz_model(2);
    auto drhos = state_derivatives(model, {0.1, 0.2});
    CHECK_THROWS_AS(derivative_norm_condition(drhos, {1.0, 1.0, 1.0}), ArgumentError);
  }
}

TEST_CASE("unitary_privacy_condition agrees with the derivative route") {
  NetworkModel model = weighted_model({1, 2});
  const ParamVector theta{0.3, 0.7};
  auto drhos = state_derivatives(model, theta);
  PrivacyVerdict via_deriv = derivative_norm_condition(drhos, {1.0, 2.0});
  PrivacyVerdict via_comm = unitary_privacy_condition(model, theta, {1.0, 2.0});
  CHECK(via_comm.is_private == via_deriv.is_private);
  REQUIRE(via_comm.pairs.size() == via_deriv.pairs.size());
  for (std::size_t i = 0; i < via_comm.pairs.size(); ++i) {
    // −i[ℍ′_μ − ℍ′_ν, ρ] is precisely ∂_μρ − ∂_νρ here, so the trace
    // norms must match to numerical precision, not merely qualitatively.
    CHECK(via_comm.pairs[i].norm_diff ==
          doctest::Approx(via_deriv.pairs[i].norm_diff).epsilon(1e-9));
  }

  // With commuting generators the probe and the encoded state give the
  // same norms (conjugation by U commutes with ℍ′ differences).
  PrivacyVerdict via_probe = unitary_privacy_condition(model, theta, {1.0, 2.0}, true);
  CHECK(via_probe.is_private);
  CHECK(via_probe.scale_a == doctest::Approx(via_comm.scale_a).epsilon(1e-9));
}

TEST_CASE("unitary_privacy_condition refuses unsupported models") {
  SUBCASE("non-commuting generator") {
    CMatrix sx(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    GeneralUnitary node;
    node.local_dim = 2;
    node.hamiltonian = [sx, sz](double t) { return (t * sx + sz).eval(); };
    CVector plus(2);
    plus << kInvSqrt2, kInvSqrt2;
    NetworkModel model({node}, DensityState::from_vector(plus, NodeDims({2})));
    CHECK_THROWS_AS(unitary_privacy_condition(model, {0.5}, {1.0}), UnsupportedEncoding);
  }

  SUBCASE("Kraus-encoded node") {
    KrausEncoding node;
    node.local_dim = 2;
    node.kraus = [](double) {
      CMatrix k0 = std::sqrt(0.9) * CMatrix::Identity(2, 2);
      CMatrix k1(2, 2);
      k1 << std::sqrt(0.1), 0, 0, -std::sqrt(0.1);
      return std::vector<CMatrix>{k0, k1};
    };
    CVector plus(2);
    plus << kInvSqrt2, kInvSqrt2;
    NetworkModel model({node}, DensityState::from_vector(plus, NodeDims({2})));
    CHECK_THROWS_AS(unitary_privacy_condition(model, {0.5}, {1.0}), UnsupportedEncoding);
  }
}

TEST_CASE("average_privacy_condition") {
  NetworkModel ghz = ghz_model(3);
  const ParamVector theta{0.2, 0.5, 0.8};
  CHECK(average_privacy_condition(state_derivatives(ghz, theta)));

  NetworkModel prod = product_plus_model();
  CHECK_FALSE(average_privacy_condition(state_derivatives(prod, {0.4, 0.9})));

  CHECK_THROWS_AS(average_privacy_condition({}), ArgumentError);
}

TEST_CASE("xi prefactor frozen values") {
  // Pure state: support eigenvalue 1 → 1·(1+32) = 33.
  CHECK(xi(ghz_state(2, kInvSqrt2, kInvSqrt2)) == doctest::Approx(33.0).epsilon(1e-9));

  // Maximally mixed qubit: λ = ½ → 2·(1+64) = 130.
  DensityState mixed(0.5 * CMatrix::Identity(2, 2), NodeDims({2}));
  CHECK(xi(mixed) == doctest::Approx(130.0).epsilon(1e-12));

  // Rank-deficient qutrit diag(0.9, 0.1, 0): support floor 0.1 → 10·321.
  CMatrix rho3 = CMatrix::Zero(3, 3);
  rho3(0, 0) = 0.9;
  rho3(1, 1) = 0.1;
  CHECK(xi(DensityState(rho3, NodeDims({3}))) == doctest::Approx(3210.0).epsilon(1e-9));
}

TEST_CASE("continuity_gap_bound holds on random full-rank models") {
  Rng rng(41);
  NodeDims dims({2, 2});
  int evaluated = 0;
  for (int rep = 0; rep < 20; ++rep) {
    DensityState probe(rng.density(4, 0.05), dims);
    NetworkModel model = multiplicative_model(rng.hermitian(2), {1, 1}, probe);
    const ParamVector theta{rng.uniform(), rng.uniform()};
    DensityState rho = evolve(model, theta);
    auto drhos = state_derivatives(model, theta);
    for (int mu = 0; mu < 2; ++mu) {
      for (int nu = 0; nu < 2; ++nu) {
        for (int mu_p = 0; mu_p < 2; ++mu_p) {
          for (int nu_p = 0; nu_p < 2; ++nu_p) {
            ContinuityBoundReport r =
                continuity_gap_bound(rho, drhos, mu, nu, mu_p, nu_p);
            CHECK(r.lhs <= r.rhs + 1e-9);
            CHECK_FALSE(r.support_restricted);
            CHECK(r.xi ==
                  doctest::Approx((1.0 / r.lambda_min_support) *
                                  (1.0 + 32.0 / r.lambda_min_support)));
            ++evaluated;
          }
        }
      }
    }
  }
  CHECK(evaluated == 20 * 16);
}

TEST_CASE("continuity_gap_bound on a pure state restricts to the support") {
  NetworkModel model = ghz_model(2);
  const ParamVector theta{0.3, 0.9};
  DensityState rho = evolve(model, theta);
  auto drhos = state_derivatives(model, theta);
  ContinuityBoundReport r = continuity_gap_bound(rho, drhos, 0, 0, 1, 1);
  CHECK(r.support_restricted);
  CHECK(r.lambda_min_support == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.xi == doctest::Approx(33.0).epsilon(1e-8));
  CHECK(r.lhs <= r.rhs + 1e-9);

  CHECK_THROWS_AS(continuity_gap_bound(rho, drhos, 0, 0, 2, 0), ArgumentError);
}

TEST_CASE("epsilon_privacy vanishes exactly on private states") {
  NetworkModel model = ghz_model(3);
  const ParamVector theta{0.2, 0.5, 0.8};
  DensityState rho = evolve(model, theta);
  const NodeDims& dims = model.dims();
  CMatrix h0 = embed_local(sigma_z_half(), 0, dims);
  CMatrix h1 = embed_local(sigma_z_half(), 1, dims);
  CHECK(epsilon_privacy(rho.matrix(), h0, h1) < 1e-12);

  CHECK_THROWS_AS(epsilon_privacy(rho.matrix(), sigma_z_half(), sigma_z_half()),
                  ArgumentError);
}

TEST_CASE("epsilon_privacy chain: commutator, trace-distance, fidelity bounds") {
  Rng rng(42);
  NetworkModel model = ghz_model(3);
  const ParamVector theta{0.2, 0.5, 0.8};
  DensityState varrho = evolve(model, theta);
  const NodeDims& dims = model.dims();
  CMatrix h0 = embed_local(sigma_z_half(), 0, dims);
  CMatrix h1 = embed_local(sigma_z_half(), 1, dims);
  const double h_inf = operator_norm(sigma_z_half());

  // Identical states: bound collapses to 0 up to the √ of the fidelity
  // roundoff, so the threshold is loose.
  CHECK(epsilon_privacy_bound(varrho, varrho, sigma_z_half()) < 1e-4);

  for (int rep = 0; rep < 50; ++rep) {
    const double t = 0.15 * rng.uniform();
    CMatrix sigma_m = (1.0 - t) * varrho.matrix() + t * rng.density(8);
    DensityState sigma(sigma_m, dims);
    const double eps = epsilon_privacy(sigma.matrix(), h0, h1);
    const double via_trace = 4.0 * h_inf * trace_norm(sigma_m - varrho.matrix());
    const double via_fidelity = epsilon_privacy_bound(sigma, varrho, sigma_z_half());
    CHECK(eps <= via_trace + 1e-9);
    CHECK(via_trace <= via_fidelity + 1e-9);
  }
}
