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
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shadowsr/pauli.hpp"
#include "shadowsr/random.hpp"

namespace shadowsr {

/// Normalized pure state of q <= kMaxQubits qubits. Amplitude index k encodes
/// the bitstring b_{q-1} ... b_0, with b_j the value of qubit j.
class Statevector {
 public:
  static constexpr int kMaxQubits = 12;
  static constexpr double kNormTolerance = 1e-10;

  /// |0...0>.
  explicit Statevector(int num_qubits);
  /// Takes ownership of already normalized amplitudes.
  Statevector(int num_qubits, Eigen::VectorXcd amplitudes);

  /// Rescales any non-zero vector of length 2^q to unit norm.
  static Statevector normalized(int num_qubits, Eigen::VectorXcd amplitudes);
  static Statevector basis_state(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const {
    return amplitudes_(static_cast<Eigen::Index>(index));
  }

 private:
  int num_qubits_;
  Eigen::VectorXcd amplitudes_;
};

namespace gates {
Matrix2 H();
Matrix2 S();
Matrix2 Sdg();
Matrix2 X();
Matrix2 Y();
Matrix2 Z();
/// exp(-i theta P / 2) for P = X, Y, Z.
Matrix2 Rx(double theta);
Matrix2 Ry(double theta);
Matrix2 Rz(double theta);
/// diag(1, e^{i phi}).
Matrix2 phase(double phi);
/// Readout rotation applied before a computational-basis measurement.
Matrix2 readout(Basis b);
}  // namespace gates

/// Gaussian amplitude profile over the register index. The AsPrinted form
/// uses exp(-(k - mu) / (2 sigma)); Squared is the textbook
/// exp(-(k - mu)^2 / (2 sigma^2)).
enum class GaussianForm { AsPrinted, Squared };

Statevector prepare_gaussian(int num_qubits, double mu, double sigma,
                             GaussianForm form = GaussianForm::AsPrinted);

/// Gate application for unitary gates. A result that is no longer normalized
/// to 1e-10 (non-unitary gate) raises DomainError.
Statevector apply_gate(const Statevector& state, const Matrix2& gate,
                       int target);
/// Applies `gate` to `target` on the branch where `control` is 1.
Statevector apply_controlled_gate(const Statevector& state,
                                  const Matrix2& gate, int control,
                                  int target);

/// O|psi> without forming dense matrices.
Eigen::VectorXcd apply_observable(const WeightedPauliSum& obs,
                                  const Eigen::VectorXcd& psi);

/// <psi|O|psi> as a complex number (no Hermiticity check).
Complex expectation_value(const Statevector& state,
                          const WeightedPauliSum& obs);

/// <psi|O|psi>. Throws HermiticityError if the imaginary part exceeds 1e-10.
double exact_expectation(const Statevector& state,
                         const WeightedPauliSum& obs);

struct ProjectedValue {
  double numerator = 0.0;  // <psi| P O P |psi>
  double norm = 0.0;       // <psi| P |psi>

  double ratio() const { return numerator / norm; }
};

/// Exact (<psi|POP|psi>, <psi|P|psi>). `projector` must be idempotent to
/// 1e-10; throws EmptySectorError when the norm is below 1e-12.
ProjectedValue exact_projected_expectation(const Statevector& state,
                                           const WeightedPauliSum& obs,
                                           const DenseMatrix& projector);

/// Born distribution of outcomes after rotating each qubit j by
/// gates::readout(bases[j]). Entry k is the probability of bitstring k.
std::vector<double> basis_probabilities(const Statevector& state,
                                        std::span<const Basis> bases);

/// One Born-rule sample in the given bases; element j is the bit of qubit j.
std::vector<std::uint8_t> sample_in_bases(const Statevector& state,
                                          std::span<const Basis> bases,
                                          Rng& rng);
std::vector<std::uint8_t> sample_in_bases(const Statevector& state,
                                          std::span<const Basis> bases,
                                          std::uint64_t seed);

/// Inverse-CDF draw from a discrete distribution (cumulative weights).
std::uint64_t sample_index(std::span<const double> cumulative, Rng& rng);

}  // namespace shadowsr
