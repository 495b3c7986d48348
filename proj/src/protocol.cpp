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

#include "qnet/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

namespace qnet {

namespace {

void require_d(int d, const char* what) {
  if (d < 1 || d > 62) {
    throw ArgumentError(std::string(what) + ": node count out of supported range");
  }
}

/// Uniform double in [0, 1) from the top 53 bits of the generator output;
/// fully specified by the standard, unlike uniform_real_distribution.
double canonical_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string outcome_string(std::uint64_t outcome, int d) {
  std::string s(static_cast<std::size_t>(d), '0');
  for (int k = 0; k < d; ++k) {
    if ((outcome >> (d - 1 - k)) & 1ULL) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

double mean_of(const ParamVector& theta) {
  if (theta.empty()) throw ArgumentError("theta must be non-empty");
  return std::accumulate(theta.begin(), theta.end(), 0.0) /
         static_cast<double>(theta.size());
}

}  // namespace

DensityState ghz_state(int d, Complex alpha, Complex beta, const Tolerances& tol) {
  require_d(d, "ghz_state");
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > tol.trace_one) {
    throw ArgumentError("ghz_state: |alpha|^2 + |beta|^2 must be 1");
  }
  const long dim = 1L << d;
  CVector psi = CVector::Zero(dim);
  psi(0) = alpha;
  psi(dim - 1) = beta;
  return DensityState::from_vector(psi, NodeDims(std::vector<int>(d, 2)), tol);
}

DensityState weighted_eigen_state(const std::vector<int>& weights,
                                  const std::vector<Complex>& coeffs,
                                  const CMatrix& eigvecs, const Tolerances& tol) {
  if (weights.empty()) throw ArgumentError("weighted_eigen_state: no weights");
  long total_slots = 0;
  for (int w : weights) {
    if (w < 1) throw ArgumentError("weighted_eigen_state: weights must be integers >= 1");
    total_slots += w;
  }
  const int local_dim = static_cast<int>(eigvecs.rows());
  if (local_dim < 2 || eigvecs.cols() > eigvecs.rows()) {
    throw ArgumentError("weighted_eigen_state: eigvecs must be n×k with k <= n");
  }
  if (coeffs.empty() || static_cast<long>(coeffs.size()) > eigvecs.cols()) {
    throw ArgumentError("weighted_eigen_state: coefficient count exceeds eigvec count");
  }
  double norm2 = 0.0;
  for (const Complex& c : coeffs) norm2 += std::norm(c);
  if (std::abs(norm2 - 1.0) > tol.trace_one) {
    throw ArgumentError("weighted_eigen_state: coefficients must be normalized");
  }

  long dim = 1;
  for (long s = 0; s < total_slots; ++s) dim *= local_dim;
  CVector psi = CVector::Zero(dim);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    // ⊗_μ |λ_i⟩^{⊗ω_μ} = |λ_i⟩^{⊗Σω}: same eigenvector on every slot.
    CVector term = eigvecs.col(static_cast<long>(i));
    for (long s = 1; s < total_slots; ++s) {
      CVector next(term.size() * local_dim);
      for (long a = 0; a < term.size(); ++a) {
        next.segment(a * local_dim, local_dim) =
            term(a) * eigvecs.col(static_cast<long>(i));
      }
      term = std::move(next);
    }
    psi += coeffs[i] * term;
  }
  return DensityState::from_vector(
      psi, NodeDims(std::vector<int>(static_cast<std::size_t>(total_slots), local_dim)),
      tol);
}

DensityState mixed_private_state(double gamma0, const DensityState& ghz,
                                 const std::vector<std::pair<long, double>>& diag_weights,
                                 const Tolerances& tol) {
  if (gamma0 < 0.0) throw ArgumentError("mixed_private_state: gamma0 must be >= 0");
  double total = gamma0;
  CMatrix rho = gamma0 * ghz.matrix();
  for (const auto& [index, gamma] : diag_weights) {
    if (gamma < 0.0) throw ArgumentError("mixed_private_state: weights must be >= 0");
    if (index < 0 || index >= ghz.dim()) {
      throw ArgumentError("mixed_private_state: basis index out of range");
    }
    rho(index, index) += gamma;
    total += gamma;
  }
  if (std::abs(total - 1.0) > tol.trace_one) {
    throw ArgumentError("mixed_private_state: weights must sum to 1");
  }
  return DensityState(std::move(rho), ghz.dims(), tol);
}

double parity_probability(int d, double theta_bar, std::uint64_t outcome) {
  require_d(d, "parity_probability");
  if (outcome >= (1ULL << d)) {
    throw ArgumentError("parity_probability: outcome index out of range");
  }
  const double parity = (std::popcount(outcome) % 2 == 0) ? 1.0 : -1.0;
  return (1.0 + parity * std::cos(d * theta_bar)) / static_cast<double>(1ULL << d);
}

Povm x_basis_povm(int d, const Tolerances& tol) {
  require_d(d, "x_basis_povm");
  if (d > 12) throw ArgumentError("x_basis_povm: projector count would be excessive");
  CVector plus(2), minus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  const long dim = 1L << d;
  std::vector<CMatrix> effects;
  effects.reserve(static_cast<std::size_t>(dim));
  for (long x = 0; x < dim; ++x) {
    CVector v = CVector::Ones(1);
    for (int k = 0; k < d; ++k) {
      const CVector& local = ((x >> (d - 1 - k)) & 1L) ? minus : plus;
      CVector next(v.size() * 2);
      for (long a = 0; a < v.size(); ++a) next.segment(a * 2, 2) = v(a) * local;
      v = std::move(next);
    }
    effects.push_back(v * v.adjoint());
  }
  return Povm(std::move(effects), tol);
}

OutcomeSample sample_outcomes(int d, const ParamVector& theta, std::uint64_t shots,
                              std::uint64_t seed) {
  require_d(d, "sample_outcomes");
  if (static_cast<int>(theta.size()) != d) {
    throw ArgumentError("sample_outcomes: theta length must equal d");
  }
  if (shots == 0) throw ArgumentError("sample_outcomes: shots must be positive");
  const double theta_bar = mean_of(theta);
  const double p_even = (1.0 + std::cos(d * theta_bar)) / 2.0;

  std::mt19937_64 rng(seed);
  const std::uint64_t free_mask = (d > 1) ? ((1ULL << (d - 1)) - 1) : 0;
  // Dense tallies up to 2^20 outcomes, a sparse map beyond (large d would
  // otherwise allocate 2^d counters for at most `shots` distinct strings).
  const bool dense = d <= 20;
  std::vector<std::uint64_t> tallies(dense ? (1ULL << d) : 0, 0);
  std::map<std::uint64_t, std::uint64_t> sparse;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const bool even = canonical_uniform(rng) < p_even;
    // Uniform string of the drawn parity: d−1 free bits plus a parity fix.
    const std::uint64_t free_bits = rng() & free_mask;
    const int free_parity = std::popcount(free_bits) % 2;
    const std::uint64_t last = even ? static_cast<std::uint64_t>(free_parity)
                                    : static_cast<std::uint64_t>(1 - free_parity);
    const std::uint64_t outcome = (free_bits << 1) | last;
    if (dense) {
      ++tallies[outcome];
    } else {
      ++sparse[outcome];
    }
  }

  OutcomeSample sample;
  sample.shots = shots;
  sample.seed = seed;
  if (dense) {
    for (std::uint64_t x = 0; x < tallies.size(); ++x) {
      if (tallies[x] > 0) sample.counts[outcome_string(x, d)] = tallies[x];
    }
  } else {
    for (const auto& [x, n] : sparse) sample.counts[outcome_string(x, d)] = n;
  }
  return sample;
}

double estimate_mean(const OutcomeSample& sample) {
  if (sample.shots == 0 || sample.counts.empty()) {
    throw ArgumentError("estimate_mean: empty sample");
  }
  const int d = static_cast<int>(sample.counts.begin()->first.size());
  double parity_sum = 0.0;
  for (const auto& [key, count] : sample.counts) {
    if (static_cast<int>(key.size()) != d) {
      throw ArgumentError("estimate_mean: inconsistent outcome strings");
    }
    const long minus_count = std::count(key.begin(), key.end(), '1');
    const double parity = (minus_count % 2 == 0) ? 1.0 : -1.0;
    parity_sum += parity * static_cast<double>(count);
  }
  const double mean_parity =
      std::clamp(parity_sum / static_cast<double>(sample.shots), -1.0, 1.0);
  return std::acos(mean_parity) / d;
}

EstimationResult run_experiment(int d, const ParamVector& theta, std::uint64_t shots,
                                int repetitions, std::uint64_t seed) {
  require_d(d, "run_experiment");
  if (repetitions < 1) throw ArgumentError("run_experiment: repetitions must be >= 1");
  const double theta_bar = mean_of(theta);

  double est_sum = 0.0, sq_err_sum = 0.0;
  for (int r = 0; r < repetitions; ++r) {
    OutcomeSample s = sample_outcomes(d, theta, shots, seed + static_cast<std::uint64_t>(r));
    const double est = estimate_mean(s);
    est_sum += est;
    sq_err_sum += (est - theta_bar) * (est - theta_bar);
  }
  EstimationResult res;
  res.theta_bar_hat = est_sum / repetitions;
  res.mse = sq_err_sum / repetitions;
  res.crb = 1.0 / (static_cast<double>(shots) * d * d);
  res.shots = shots;
  res.repetitions = repetitions;
  return res;
}

}  // namespace qnet
