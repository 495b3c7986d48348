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

#include "qnet/analysis.hpp"

namespace qnet {

FisherMatrix model_qfim(const NetworkModel& model, const ParamVector& theta,
                        const Tolerances& tol) {
  const DensityState rho = evolve(model, theta, tol);
  return qfim(rho, state_derivatives(model, theta, tol), theta, -1.0, tol);
}

FisherMatrix model_cfim(const NetworkModel& model, const ParamVector& theta,
                        const Povm& povm, const Tolerances& tol) {
  const DensityState rho = evolve(model, theta, tol);
  return cfim(rho, povm, state_derivatives(model, theta, tol), theta, tol);
}

NetworkModel multiplicative_model(const CMatrix& generator, const std::vector<int>& weights,
                                  DensityState probe) {
  std::vector<EncodingMap> nodes;
  nodes.reserve(weights.size());
  for (int w : weights) nodes.push_back(MultiplicativeUnitary{generator, w});
  return NetworkModel(std::move(nodes), std::move(probe));
}

CMatrix sigma_z_half() {
  CMatrix h(2, 2);
  h << 0.5, 0.0, 0.0, -0.5;
  return h;
}

}  // namespace qnet
