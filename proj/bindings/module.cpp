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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnet/analysis.hpp"
#include "qnet/noise.hpp"
#include "qnet/privacy.hpp"
#include "qnet/protocol.hpp"
#include "qnet/report.hpp"

namespace py = pybind11;
using namespace qnet;

namespace {

/// Multiplicative model from raw arrays: probe over Σ weights slots of the
/// generator's dimension.
NetworkModel make_model(const CMatrix& generator, const std::vector<int>& weights,
                        const CMatrix& probe) {
  int slots = 0;
  for (int w : weights) slots += w;
  NodeDims dims(std::vector<int>(static_cast<std::size_t>(slots),
                                 static_cast<int>(generator.rows())));
  return multiplicative_model(generator, weights, DensityState(probe, dims));
}

NoiseChannel make_channel(const std::string& name, double eta,
                          const std::string& locality) {
  NoiseSpec spec;
  spec.channel = name;
  spec.locality = locality;
  return build_channel(spec, eta);
}

py::dict verdict_dict(const PrivacyVerdict& v) {
  py::dict out;
  out["is_private"] = v.is_private;
  out["scale_a"] = v.scale_a;
  out["residual_rel"] = v.residual_rel;
  out["residual_defined"] = v.residual_defined;
  py::list pairs;
  for (const PairDiagnostic& p : v.pairs) {
    py::dict e;
    e["mu"] = p.mu;
    e["nu"] = p.nu;
    e["norm_diff"] = p.norm_diff;
    e["weight_gap"] = p.weight_gap;
    e["ratio"] = p.ratio;
    e["ratio_defined"] = p.ratio_defined;
    pairs.append(e);
  }
  out["pairs"] = pairs;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum sensor network privacy analysis (C++ core)";
  m.attr("__version__") = kToolVersion;

  // States and channels -----------------------------------------------------
  m.def(
      "ghz_state",
      [](int d, Complex alpha, Complex beta) { return ghz_state(d, alpha, beta).matrix(); },
      py::arg("d"), py::arg("alpha"), py::arg("beta"),
      "Density matrix of the GHZ-type probe alpha|0...0> + beta|1...1>.");

  m.def(
      "apply_channel",
      [](const CMatrix& rho, const std::vector<int>& dims, const std::string& channel,
         double eta, const std::string& locality) {
        NodeDims nd(dims);
        return apply_channel(DensityState(rho, nd), make_channel(channel, eta, locality))
            .matrix();
      },
      py::arg("rho"), py::arg("dims"), py::arg("channel"), py::arg("eta"),
      py::arg("locality") = "per_node",
      "Noise channel applied on every tensor slot (locality 'per_node') or as "
      "the global map (depolarizing only).");

  m.def(
      "evolve",
      [](const CMatrix& generator, const std::vector<int>& weights, const CMatrix& probe,
         const ParamVector& theta) {
        return evolve(make_model(generator, weights, probe), theta).matrix();
      },
      py::arg("generator"), py::arg("weights"), py::arg("probe"), py::arg("theta"),
      "Encoded state of the multiplicative model e^{-i theta_mu H} per node.");

  m.def("fidelity",
        py::overload_cast<const CMatrix&, const CMatrix&>(&fidelity),
        py::arg("rho"), py::arg("sigma"), "Uhlmann fidelity of two density matrices.");

  // Fisher information ------------------------------------------------------
  m.def(
      "qfim",
      [](const CMatrix& generator, const std::vector<int>& weights, const CMatrix& probe,
         const ParamVector& theta) {
        return model_qfim(make_model(generator, weights, probe), theta).entries;
      },
      py::arg("generator"), py::arg("weights"), py::arg("probe"), py::arg("theta"),
      "Quantum Fisher information matrix of the multiplicative model.");

  m.def(
      "cfim_x_basis",
      [](const CMatrix& generator, const std::vector<int>& weights, const CMatrix& probe,
         const ParamVector& theta) {
        NetworkModel model = make_model(generator, weights, probe);
        return model_cfim(model, theta, x_basis_povm(model.dims().count())).entries;
      },
      py::arg("generator"), py::arg("weights"), py::arg("probe"), py::arg("theta"),
      "Classical Fisher information under the X-basis measurement.");

  m.def(
      "reparam_completion", [](const WeightVector& w) { return reparam_completion(w); },
      py::arg("w"),
      "Coordinate-change matrix whose first new coordinate is w^T Theta.");

  m.def("sigma_z_half", &sigma_z_half, "The reference qubit generator sigma_z / 2.");

  // Privacy -----------------------------------------------------------------
  m.def(
      "rank_one_check",
      [](const RMatrix& q, const WeightVector& w, double tol) {
        return verdict_dict(
            rank_one_privacy_check(FisherMatrix(q, FisherMatrix::Kind::quantum, {}), w, tol));
      },
      py::arg("qfim"), py::arg("w"), py::arg("tol") = default_tol().privacy,
      "Tests Q ∝ w w^T (the private-encoding criterion).");

  m.def(
      "derivative_norm_check",
      [](const CMatrix& generator, const std::vector<int>& weights, const CMatrix& probe,
         const ParamVector& theta, const WeightVector& w, double tol) {
        NetworkModel model = make_model(generator, weights, probe);
        return verdict_dict(
            derivative_norm_condition(state_derivatives(model, theta), w, tol));
      },
      py::arg("generator"), py::arg("weights"), py::arg("probe"), py::arg("theta"),
      py::arg("w"), py::arg("tol") = default_tol().privacy,
      "Pairwise trace-norm proportionality of the state derivatives.");

  m.def(
      "epsilon_privacy",
      [](const CMatrix& sigma, const CMatrix& h_mu, const CMatrix& h_nu) {
        return epsilon_privacy(sigma, h_mu, h_nu);
      },
      py::arg("sigma"), py::arg("h_mu"), py::arg("h_nu"),
      "epsilon = ||[H'_mu - H'_nu, sigma]||_1.");

  // Protocol ----------------------------------------------------------------
  m.def(
      "sample_counts",
      [](int d, const ParamVector& theta, std::uint64_t shots, std::uint64_t seed) {
        return sample_outcomes(d, theta, shots, seed).counts;
      },
      py::arg("d"), py::arg("theta"), py::arg("shots"), py::arg("seed"),
      "X-basis outcome counts of the GHZ parity protocol (deterministic per seed).");

  m.def(
      "run_experiment",
      [](int d, const ParamVector& theta, std::uint64_t shots, int repetitions,
         std::uint64_t seed) {
        const EstimationResult r = run_experiment(d, theta, shots, repetitions, seed);
        py::dict out;
        out["theta_bar_hat"] = r.theta_bar_hat;
        out["mse"] = r.mse;
        out["crb"] = r.crb;
        out["shots"] = r.shots;
        out["repetitions"] = r.repetitions;
        return out;
      },
      py::arg("d"), py::arg("theta"), py::arg("shots"), py::arg("repetitions"),
      py::arg("seed"),
      "Monte-Carlo mean estimation; mse is measured against the true mean.");

  // Scenario runner ---------------------------------------------------------
  m.def(
      "run_scenario_json",
      [](const std::string& text) {
        nlohmann::json doc;
        try {
          doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
          throw ArgumentError(std::string("scenario is not valid JSON: ") + e.what());
        }
        bool certify_ok = true;
        const nlohmann::json report = run_scenario(parse_scenario(doc), &certify_ok);
        return py::make_tuple(report.dump(2), certify_ok);
      },
      py::arg("text"),
      "Runs a scenario document (JSON text); returns (report_json, certify_ok). "
      "certify_ok is True except for failed certify tasks.");
}
