// Copyright 2026 The shadowsr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "shadowsr/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "shadowsr/errors.hpp"

namespace shadowsr {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubits(int num_qubits) {
  if (num_qubits < 1 || num_qubits > Statevector::kMaxQubits) {
    throw DomainError("statevector supports 1.." +
                      std::to_string(Statevector::kMaxQubits) + " qubits, got " +
                      std::to_string(num_qubits));
  }
}

void check_target(const Statevector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw DimensionError("qubit index " + std::to_string(qubit) +
                         " out of range");
  }
}

// Applies the 2x2 gate in place on every amplitude pair of `target` whose
// `mask` bits are all set.
void apply_inplace(Eigen::VectorXcd& psi, const Matrix2& g, int target,
                   std::uint64_t mask) {
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  const std::uint64_t bit = std::uint64_t{1} << target;
  for (std::uint64_t k = 0; k < dim; ++k) {
    if ((k & bit) || (k & mask) != mask) continue;
    const auto i0 = static_cast<Eigen::Index>(k);
    const auto i1 = static_cast<Eigen::Index>(k | bit);
    const Complex a0 = psi(i0);
    const Complex a1 = psi(i1);
    psi(i0) = g(0, 0) * a0 + g(0, 1) * a1;
    psi(i1) = g(1, 0) * a0 + g(1, 1) * a1;
  }
}

}  // namespace

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubits(num_qubits);
  amplitudes_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  amplitudes_(0) = 1.0;
}

Statevector::Statevector(int num_qubits, Eigen::VectorXcd amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubits(num_qubits);
  if (amplitudes_.size() != (Eigen::Index{1} << num_qubits)) {
    throw DimensionError("amplitude vector length must be 2^q");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
    throw DomainError("statevector is not normalized");
  }
}

Statevector Statevector::normalized(int num_qubits,
                                    Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= n;
  return Statevector(num_qubits, std::move(amplitudes));
}

Statevector Statevector::basis_state(int num_qubits, std::uint64_t index) {
  check_qubits(num_qubits);
  if (index >= (std::uint64_t{1} << num_qubits)) {
    throw DimensionError("basis index out of range");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return Statevector(num_qubits, std::move(amps));
}

namespace gates {

Matrix2 H() {
  Matrix2 m;
  const double r = std::numbers::sqrt2 / 2.0;
  m << r, r, r, -r;
  return m;
}
Matrix2 S() {
  Matrix2 m;
  m << 1, 0, 0, kI;
  return m;
}
Matrix2 Sdg() {
  Matrix2 m;
  m << 1, 0, 0, -kI;
  return m;
}
Matrix2 X() { return pauli_matrix(Pauli::X); }
Matrix2 Y() { return pauli_matrix(Pauli::Y); }
Matrix2 Z() { return pauli_matrix(Pauli::Z); }
Matrix2 Rx(double theta) {
  Matrix2 m;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -kI * s, -kI * s, c;
  return m;
}
Matrix2 Ry(double theta) {
  Matrix2 m;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -s, s, c;
  return m;
}
Matrix2 Rz(double theta) {
  Matrix2 m;
  m << std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2));
  return m;
}
Matrix2 phase(double phi) {
  Matrix2 m;
  m << 1, 0, 0, std::exp(kI * phi);
  return m;
}
Matrix2 readout(Basis b) {
  switch (b) {
    case Basis::X:
      return H();
    case Basis::Y:
      return H() * Sdg();
    case Basis::Z:
      break;
  }
  return Matrix2::Identity();
}

}  // namespace gates

Statevector prepare_gaussian(int num_qubits, double mu, double sigma,
                             GaussianForm form) {
  check_qubits(num_qubits);
  if (!(sigma > 0.0)) throw DomainError("gaussian sigma must be positive");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Eigen::VectorXcd amps(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double x = (static_cast<double>(k) - mu) / sigma;
    const double exponent = form == GaussianForm::Squared ? x * x : x;
    amps(k) = std::exp(-0.5 * exponent);
  }
  return Statevector::normalized(num_qubits, std::move(amps));
}

Statevector apply_gate(const Statevector& state, const Matrix2& gate,
                       int target) {
  check_target(state, target);
  Eigen::VectorXcd psi = state.amplitudes();
  apply_inplace(psi, gate, target, 0);
  return Statevector(state.num_qubits(), std::move(psi));
}

Statevector apply_controlled_gate(const Statevector& state,
                                  const Matrix2& gate, int control,
                                  int target) {
  check_target(state, control);
  check_target(state, target);
  if (control == target) {
    throw DimensionError("control and target must differ");
  }
  Eigen::VectorXcd psi = state.amplitudes();
  apply_inplace(psi, gate, target, std::uint64_t{1} << control);
  return Statevector(state.num_qubits(), std::move(psi));
}

Eigen::VectorXcd apply_observable(const WeightedPauliSum& obs,
                                  const Eigen::VectorXcd& psi) {
  const int q = obs.num_qubits();
  if (psi.size() != (Eigen::Index{1} << q)) {
    throw DimensionError("observable and state dimensions differ");
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (const auto& term : obs.terms()) {
    std::uint64_t flip = 0, zmask = 0, ymask = 0;
    for (int j = 0; j < q; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      switch (term.string[j]) {
        case Pauli::I:
          break;
        case Pauli::X:
          flip |= bit;
          break;
        case Pauli::Y:
          flip |= bit;
          ymask |= bit;
          break;
        case Pauli::Z:
          zmask |= bit;
          break;
      }
    }
    // Y = i X Z, so each Y contributes a factor i and a Z-type sign.
    const int ny = std::popcount(ymask);
    Complex base = term.coefficient;
    for (int n = 0; n < ny; ++n) base *= kI;
    const std::uint64_t sign_mask = zmask | ymask;
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      const auto uk = static_cast<std::uint64_t>(k);
      const bool negative = std::popcount(uk & sign_mask) & 1;
      out(static_cast<Eigen::Index>(uk ^ flip)) +=
          (negative ? -base : base) * psi(k);
    }
  }
  return out;
}

Complex expectation_value(const Statevector& state,
                          const WeightedPauliSum& obs) {
  return state.amplitudes().dot(apply_observable(obs, state.amplitudes()));
}

double exact_expectation(const Statevector& state,
                         const WeightedPauliSum& obs) {
  const Complex value = expectation_value(state, obs);
  if (std::abs(value.imag()) > 1e-10) {
    throw HermiticityError("expectation has imaginary part " +
                           std::to_string(value.imag()));
  }
  return value.real();
}

ProjectedValue exact_projected_expectation(const Statevector& state,
                                           const WeightedPauliSum& obs,
                                           const DenseMatrix& projector) {
  const auto dim = static_cast<Eigen::Index>(state.dimension());
  if (projector.rows() != dim || projector.cols() != dim) {
    throw DimensionError("projector dimension does not match the state");
  }
  if ((projector * projector - projector).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("projector is not idempotent");
  }
  const Eigen::VectorXcd projected = projector * state.amplitudes();
  const Complex norm = state.amplitudes().dot(projected);
  if (std::abs(norm) < 1e-12) {
    throw EmptySectorError("projected state has zero norm");
  }
  const Complex numerator = projected.dot(apply_observable(obs, projected));
  if (std::abs(numerator.imag()) > 1e-10 || std::abs(norm.imag()) > 1e-10) {
    throw HermiticityError("projected expectation is not real");
  }
  return {numerator.real(), norm.real()};
}

std::vector<double> basis_probabilities(const Statevector& state,
                                        std::span<const Basis> bases) {
  if (bases.size() != static_cast<std::size_t>(state.num_qubits())) {
    throw DimensionError("one basis letter per qubit is required");
  }
  Eigen::VectorXcd psi = state.amplitudes();
  for (int j = 0; j < state.num_qubits(); ++j) {
    if (bases[static_cast<std::size_t>(j)] == Basis::Z) continue;
    apply_inplace(psi, gates::readout(bases[static_cast<std::size_t>(j)]), j,
                  0);
  }
  std::vector<double> probs(static_cast<std::size_t>(psi.size()));
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    probs[static_cast<std::size_t>(k)] = std::norm(psi(k));
  }
  return probs;
}

std::uint64_t sample_index(std::span<const double> cumulative, Rng& rng) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto idx = static_cast<std::uint64_t>(it - cumulative.begin());
  return std::min<std::uint64_t>(idx, cumulative.size() - 1);
}

std::vector<std::uint8_t> sample_in_bases(const Statevector& state,
                                          std::span<const Basis> bases,
                                          Rng& rng) {
  std::vector<double> cdf = basis_probabilities(state, bases);
  std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
  const std::uint64_t k = sample_index(cdf, rng);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(state.num_qubits()));
  for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = (k >> j) & 1;
  return bits;
}

std::vector<std::uint8_t> sample_in_bases(const Statevector& state,
                                          std::span<const Basis> bases,
                                          std::uint64_t seed) {
  Rng rng(seed);
  return sample_in_bases(state, bases, rng);
}

}  // namespace shadowsr
