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
#include "shadowsr/states.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "shadowsr/errors.hpp"
#include "shadowsr/projectors.hpp"

namespace shadowsr {

namespace {

Statevector couple_xx(const Statevector& state, int a, int b, double t) {
  // exp(-i t X_a X_b) = CNOT(a, b) Rx(2t)_a CNOT(a, b).
  Statevector s = apply_controlled_gate(state, gates::X(), a, b);
  s = apply_gate(s, gates::Rx(2.0 * t), a);
  return apply_controlled_gate(s, gates::X(), a, b);
}

}  // namespace

Statevector hadamard_product_state(int num_qubits) {
  Statevector s(num_qubits);
  for (int j = 0; j < num_qubits; ++j) s = apply_gate(s, gates::H(), j);
  return s;
}

Statevector parity_mixed_state(int num_qubits, double p_even) {
  if (!(p_even >= 0.0 && p_even <= 1.0)) {
    throw DomainError("even-parity weight must lie in [0, 1]");
  }
  static constexpr std::array<double, 3> kCouplings = {0.7, 1.1, 0.4};
  Statevector s(num_qubits);
  s = apply_gate(s, gates::Ry(2.0 * std::acos(std::sqrt(p_even))), 0);
  for (int j = 0; j + 1 < num_qubits; ++j) {
    s = couple_xx(s, j, j + 1, kCouplings[static_cast<std::size_t>(j) % kCouplings.size()]);
  }
  for (int j = 0; j < num_qubits; ++j) s = apply_gate(s, gates::Rz(0.3 * (j + 1)), j);
  return s;
}

Statevector bcs_product_state(const PairingSpec& spec) {
  const int q = spec.num_levels;
  if (q < 1) throw DimensionError("pairing model needs >= 1 level");
  const double lambda = 0.5 * (q - 1) * spec.level_spacing;
  const double gap = std::abs(spec.coupling);
  Statevector s(q);
  for (int j = 0; j < q; ++j) {
    const double shifted = j * spec.level_spacing - lambda;
    double v2;
    if (gap == 0.0) {
      v2 = shifted < 0.0 ? 1.0 : (shifted > 0.0 ? 0.0 : 0.5);
    } else {
      v2 = 0.5 * (1.0 - shifted / std::hypot(shifted, gap));
    }
    s = apply_gate(s, gates::Ry(2.0 * std::asin(std::sqrt(v2))), j);
  }
  return s;
}

DenseMatrix spin_eigenbasis(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
    throw DimensionError("spin eigenbasis limited to 1.." +
                         std::to_string(kMaxDenseQubits) + " qubits");
  }
  const Eigen::MatrixXd s2 = to_dense(total_spin_squared(num_qubits)).real();
  const Eigen::Index dim = s2.rows();

  struct Vector {
    double s2;
    int two_m;
    Eigen::VectorXd v;
  };
  std::vector<Vector> found;
  // S_z is diagonal, so each popcount block of S^2 carries one m value.
  for (int ones = 0; ones <= num_qubits; ++ones) {
    std::vector<Eigen::Index> block;
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (std::popcount(static_cast<std::uint64_t>(k)) == ones) block.push_back(k);
    }
    const auto n = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd sub(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = s2(block[r], block[c]);
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
      for (Eigen::Index r = 0; r < n; ++r) v(block[r]) = solver.eigenvectors()(r, i);
      Eigen::Index top = 0;
      v.cwiseAbs().maxCoeff(&top);
      if (v(top) < 0.0) v = -v;
      found.push_back({std::round(solver.eigenvalues()(i) * 4.0) / 4.0,
                       num_qubits - 2 * ones, std::move(v)});
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Vector& a, const Vector& b) {
    if (a.s2 != b.s2) return a.s2 < b.s2;
    return a.two_m < b.two_m;
  });
  DenseMatrix basis(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    basis.col(k) = found[static_cast<std::size_t>(k)].v.cast<Complex>();
  }
  return basis;
}

Statevector spin_mixed_gaussian_state(int num_qubits, double mu, double sigma,
                                      GaussianForm form) {
  const Statevector profile = prepare_gaussian(num_qubits, mu, sigma, form);
  return Statevector::normalized(num_qubits,
                                 spin_eigenbasis(num_qubits) * profile.amplitudes());
}

}  // namespace shadowsr
