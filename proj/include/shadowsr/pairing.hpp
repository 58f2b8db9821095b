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

#include <vector>

#include "shadowsr/pauli.hpp"

namespace shadowsr {

/// Picket-fence pairing model: levels e_i = i * level_spacing, one qubit per
/// doubly degenerate level, |1> marks an occupied pair.
struct PairingSpec {
  int num_levels = 4;
  double level_spacing = 1.0;
  double coupling = 1.0;
};

/// Qubit Hamiltonian sum_i 2 e_i n_i - g sum_{ij} P+_i P_j, including the
/// diagonal i = j part of the pairing sum.
WeightedPauliSum build_pairing_hamiltonian(const PairingSpec& spec);

/// Sorted eigenvalues of the Hamiltonian restricted to states with
/// n_pairs occupied levels.
std::vector<double> sector_spectrum(const PairingSpec& spec, int n_pairs);

/// Lowest eigenvalue in the n_pairs sector.
double exact_sector_ground_energy(const PairingSpec& spec, int n_pairs);

}  // namespace shadowsr
