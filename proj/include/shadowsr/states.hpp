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

#include "shadowsr/pairing.hpp"
#include "shadowsr/statevector.hpp"

namespace shadowsr {

/// H on every qubit of |0...0>.
Statevector hadamard_product_state(int num_qubits);

/// Entangled state with even-parity weight exactly p_even: a Ry rotation on
/// qubit 0 followed by parity-preserving exp(-i t X_a X_b) couplings on
/// neighboring pairs and Rz phases.
Statevector parity_mixed_state(int num_qubits, double p_even);

/// BCS-like product state of the pairing model: qubit j is occupied with
/// probability v_j^2 = (1 - (e_j - lambda) / sqrt((e_j - lambda)^2 + g^2)) / 2,
/// lambda the mid-spectrum chemical potential. It mixes particle numbers.
Statevector bcs_product_state(const PairingSpec& spec);

/// Gaussian profile spread over the eigenbasis of total spin S^2: the k-th
/// amplitude multiplies the k-th simultaneous S^2, S_z eigenvector, ordered
/// by s, then m, each with its largest component made positive.
Statevector spin_mixed_gaussian_state(int num_qubits, double mu, double sigma,
                                      GaussianForm form = GaussianForm::AsPrinted);

/// Columns are the simultaneous S^2, S_z eigenvectors used above.
DenseMatrix spin_eigenbasis(int num_qubits);

}  // namespace shadowsr
