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
#include "shadowsr/statevector.hpp"

namespace shadowsr {

/// One measurement event: the basis of every qubit and the observed bits.
struct Snapshot {
  std::vector<Basis> bases;
  std::vector<std::uint8_t> outcome;

  int num_qubits() const { return static_cast<int>(bases.size()); }
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// How the snapshot bases were chosen. The choice selects the estimator:
/// uniformly random bases use the inverted-channel (factor 3) estimator,
/// prescribed bases use compatible-measurement averaging.
enum class BasisSource { UniformRandom, Prescribed };

class ClassicalShadow {
 public:
  ClassicalShadow(int num_qubits, std::vector<Snapshot> snapshots,
                  std::uint64_t seed,
                  BasisSource source = BasisSource::UniformRandom);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return snapshots_.size(); }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  std::uint64_t seed() const { return seed_; }
  BasisSource source() const { return source_; }

 private:
  int num_qubits_;
  std::vector<Snapshot> snapshots_;
  std::uint64_t seed_;
  BasisSource source_;
};

/// Distinct snapshot with its relative frequency (or, for exact enumeration,
/// its probability).
struct WeightedSnapshot {
  Snapshot snapshot;
  double weight = 0.0;
};

/// M snapshots with i.i.d. uniform bases. Snapshot n draws from its own
/// stream derive_seed(seed, n), so results do not depend on scheduling.
ClassicalShadow acquire_shadow(const Statevector& state, std::size_t shots,
                               std::uint64_t seed);

/// One snapshot per entry of `plan`, measured in the given bases.
ClassicalShadow acquire_shadow(const Statevector& state,
                               std::span<const std::vector<Basis>> plan,
                               std::uint64_t seed);

/// Tr[P (3 r - I)] for one qubit measured in `basis` with outcome
/// `outcome_bit`: 1 for P = I, +/-3 when the basis matches P, else 0.
int qubit_trace_factor(Basis basis, int outcome_bit, Pauli p);

/// Tr[O rho_hat] for one snapshot of a single Pauli string (phase included).
Complex snapshot_trace(const Snapshot& snapshot, const PauliString& string);

/// Collapses repeated snapshots; order is by first appearance.
std::vector<WeightedSnapshot> tally(const ClassicalShadow& shadow);

/// sum_n w_n Tr[O rho_hat^(n)] over weighted snapshots (inverted-channel
/// estimator).
Complex weighted_trace(std::span<const WeightedSnapshot> snapshots,
                       const WeightedPauliSum& obs);

struct EstimatorOptions {
  /// Median of block means instead of the plain mean. Random-basis shadows
  /// only.
  bool median_of_means = false;
  int blocks = 10;
};

/// Estimate of Tr(O rho). Random-basis shadows use the empirical mean of the
/// inverted-channel traces; prescribed-basis shadows average the parity of
/// every compatible snapshot per term (terms never measured contribute 0).
/// Returns the real part; throws DomainError on an empty shadow.
double estimate(const ClassicalShadow& shadow, const WeightedPauliSum& obs,
                const EstimatorOptions& options = {});

/// Compatible-measurement estimator, used for prescribed bases.
Complex compatible_count_estimate(const ClassicalShadow& shadow,
                                  const WeightedPauliSum& obs);

/// Number of snapshots whose bases match `string` on its support.
std::size_t coverage(const ClassicalShadow& shadow, const PauliString& string);

/// tensor_j (3 U_j^dagger |b_j><b_j| U_j - I) as a dense 2^q x 2^q matrix.
DenseMatrix snapshot_density(const Snapshot& snapshot);

/// Mean snapshot density. Hermitian with unit trace but not necessarily
/// positive. Limited to q <= kMaxReconstructQubits.
inline constexpr int kMaxReconstructQubits = 4;
DenseMatrix reconstruct_density(const ClassicalShadow& shadow);
DenseMatrix reconstruct_density(std::span<const WeightedSnapshot> snapshots,
                                int num_qubits);

}  // namespace shadowsr
