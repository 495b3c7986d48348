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

#pragma once

#include "qnet/fisher.hpp"
#include "qnet/model.hpp"
#include "qnet/noise.hpp"
#include "qnet/privacy.hpp"

namespace qnet {

/// Quantum Fisher information of the encoded state at theta.
FisherMatrix model_qfim(const NetworkModel& model, const ParamVector& theta,
                        const Tolerances& tol = default_tol());

/// Classical Fisher information of the encoded state under the POVM.
FisherMatrix model_cfim(const NetworkModel& model, const ParamVector& theta,
                        const Povm& povm, const Tolerances& tol = default_tol());

/// Model whose nodes all sample e^{-iθH} with the given qubit generator and
/// integer weights, probe supplied by the caller.
NetworkModel multiplicative_model(const CMatrix& generator, const std::vector<int>& weights,
                                  DensityState probe);

/// σ_z/2, the reference qubit generator of the average-estimation protocol.
CMatrix sigma_z_half();

}  // namespace qnet
