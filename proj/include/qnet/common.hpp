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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnet {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Parameter vector Θ = (θ_1, …, θ_d), one entry per network node.
using ParamVector = std::vector<double>;
/// Weight vector w defining the target linear function w^T Θ.
using WeightVector = std::vector<double>;

/// Raised when an input violates a documented precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is asked to handle an encoding outside its
/// supported class (e.g. a Kraus-encoded node where a unitary is required).
class UnsupportedEncoding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal numerical cross-check fails; indicates the
/// result cannot be trusted rather than a caller mistake.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Central tolerance record. Every validation and default threshold in the
/// library reads from here so tests, CLI, and bindings agree on one set of
/// numbers.
struct Tolerances {
  double hermitian = 1e-10;        // max |M - M†| entry for Hermiticity checks
  double trace_one = 1e-10;        // |Tr ρ - 1| for density matrices
  double psd = 1e-10;              // eigenvalues of states must be ≥ -psd
  double state_reconstruct = 1e-9; // spectrum must rebuild its matrix to this
  double unitary = 1e-9;           // |U†U - 1| for sampling unitaries
  double kraus_complete = 1e-9;    // |Σ A†A - 1| for Kraus sets
  double povm_complete = 1e-9;     // |Σ Π - 1| for POVMs
  double derivative_sym = 1e-8;    // Hermiticity/tracelessness of ∂ρ
  double fisher_sym = 1e-9;        // symmetry of Fisher matrices
  double fisher_psd = 1e-9;        // eigenvalues of Fisher matrices ≥ -this
  double fisher_cross = 1e-7;      // agreement of the two QFIM formulas
  double privacy = 1e-8;           // default privacy verdict tolerance
  double commute = 1e-10;          // commutator-norm threshold (noise, Eq.-type checks)
  double rank_rel = 1e-10;         // relative spectral cut for support/pinv
  double zero_entry = 1e-12;       // structural-zero threshold for matrix predicates
  double p_floor = 1e-12;          // probabilities below this are dropped in the CFIM
  double fd_step = 1e-5;           // central finite-difference step
};

inline const Tolerances& default_tol() {
  static const Tolerances t{};
  return t;
}

inline constexpr const char* kToolName = "qnet-privacy";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qnet
