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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "shadowsr/pauli.hpp"
#include "shadowsr/shadow.hpp"

namespace shadowsr {

struct IdentityLabel {};
struct ParityLabel {
  int epsilon;  // +1 even, -1 odd
};
struct NumberLabel {
  int n0;
};
/// Spin sector |s, m> with quadrature mesh size; s and m are doubled.
struct SpinLabel {
  int two_s;
  int two_m;
  int mesh_points;
};
using SymmetryLabel =
    std::variant<IdentityLabel, ParityLabel, NumberLabel, SpinLabel>;

std::string describe(const SymmetryLabel& label);

/// Projector as a linear combination of product operators,
/// P = sum_k beta_k tensor_j G_k^j, with every G stored by its Pauli
/// coefficients.
class ProjectorLCU {
 public:
  struct Term {
    Complex beta;
    std::vector<SingleQubitGate> gates;  // gates[j] acts on qubit j
  };

  ProjectorLCU(int num_qubits, std::vector<Term> terms, SymmetryLabel label);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Term>& terms() const { return terms_; }
  const SymmetryLabel& label() const { return label_; }

 private:
  int num_qubits_;
  std::vector<Term> terms_;
  SymmetryLabel label_;
};

ProjectorLCU identity_projector(int num_qubits);

/// (I + epsilon Z...Z) / 2.
ProjectorLCU parity_projector(int num_qubits, int epsilon);

/// Fourier sum over q+1 phase-gate layers:
/// P_n0 = sum_k e^{-i phi_k n0} / (q+1) tensor_j Q(phi_k), phi_k = 2 pi k/(q+1),
/// Q(phi) = diag(1, e^{i phi}). The number operator counts 1-bits.
ProjectorLCU number_projector(int num_qubits, int n0);

/// Midpoint-rule discretization of the group integral for |s,m> using
/// `mesh_points` nodes per Euler angle (mesh_points^3 terms). Each qubit gate
/// is Rz(alpha) Ry(beta) Rz(gamma) with R(theta) = exp(-i theta P / 2).
ProjectorLCU spin_projector(int num_qubits, int two_s, int two_m,
                            int mesh_points);

/// Builds a projector from a label (identity, parity, number or spin).
ProjectorLCU make_projector(int num_qubits, const SymmetryLabel& label);

/// Every eigenvalue channel of one symmetry family: both parities, all
/// n0 = 0..q, or all admissible (s, m) at the given mesh.
std::vector<SymmetryLabel> all_sectors(int num_qubits,
                                       const SymmetryLabel& family);

/// Dense matrix of the LCU (q <= kMaxDenseQubits).
DenseMatrix to_dense(const ProjectorLCU& projector);

/// The product O P expanded into a Pauli sum.
WeightedPauliSum expand_product(const WeightedPauliSum& obs,
                                const ProjectorLCU& projector);

struct ProjectedEstimate {
  double numerator = 0.0;  // mean of Tr[O P rho_hat]
  double norm = 0.0;       // mean of Tr[P rho_hat]

  /// numerator / norm, or nullopt for an empty (non-positive norm) sector.
  std::optional<double> ratio() const;
};

/// sum_n w_n Tr[O P rho_hat^(n)] evaluated qubit by qubit: each term
/// factorizes into prod_j sum_m alpha_m Tr[P_j P'_m (3 r_j - I)].
/// Tr[O P snapshot] for each snapshot.
std::vector<Complex> snapshot_projected_values(std::span<const Snapshot> snapshots,
                                               const WeightedPauliSum& obs,
                                               const ProjectorLCU& projector);

Complex weighted_projected_trace(std::span<const WeightedSnapshot> snapshots,
                                 const WeightedPauliSum& obs,
                                 const ProjectorLCU& projector);

/// Symmetry-projected estimate from a classical shadow. Random-basis shadows
/// use the factorized inverted-channel traces; prescribed-basis shadows
/// apply the compatible-measurement estimator to the expanded products O P
/// and P.
/// Exact expectation of the estimator: (<psi|O P|psi>, <psi|P|psi>) with P
/// applied term by term, so discretized projectors are reproduced as built.
ProjectedEstimate exact_lcu_expectation(const Statevector& state,
                                        const WeightedPauliSum& obs,
                                        const ProjectorLCU& projector);

ProjectedEstimate projected_estimate(const ClassicalShadow& shadow,
                                     const WeightedPauliSum& obs,
                                     const ProjectorLCU& projector);

/// P rho P for a dense density matrix.
DenseMatrix project_density(const DenseMatrix& rho,
                            const DenseMatrix& projector);

/// Total spin operators S^2 and S_z with S = (1/2) sum_j sigma_j.
WeightedPauliSum total_spin_squared(int num_qubits);
WeightedPauliSum total_spin_z(int num_qubits);
/// Number operator sum_j (I - Z_j) / 2.
WeightedPauliSum number_operator(int num_qubits);

/// Exact projector onto the joint (S^2 = s(s+1), S_z = m) eigenspace from a
/// dense eigendecomposition.
DenseMatrix exact_spin_eigenprojector(int num_qubits, int two_s, int two_m);

}  // namespace shadowsr
