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
#include <string>
#include <string_view>
#include <vector>

#include "shadowsr/pauli.hpp"
#include "shadowsr/statevector.hpp"

namespace shadowsr {

enum class PlanProvenance { Random, Derandomized, GroupedCounts };

std::string to_string(PlanProvenance p);
PlanProvenance provenance_from_string(std::string_view text);

struct MeasurementPlan {
  int num_qubits = 0;
  std::vector<std::vector<Basis>> rounds;
  PlanProvenance provenance = PlanProvenance::Random;
};

struct ObservableGroup {
  std::vector<std::size_t> members;  // indices into WeightedPauliSum::terms()
  std::vector<Basis> shared_basis;   // qubits untouched by any member read Z
};

inline constexpr double kDefaultShadowNormConstant = 34.0;

/// Snapshot count sufficient to predict every observable to additive error
/// epsilon under the single-qubit Pauli ensemble. A list of one observable
/// uses log L = 1.
std::uint64_t shadow_norm_bound(std::span<const PauliString> observables,
                                double epsilon,
                                double constant = kDefaultShadowNormConstant);

struct DerandomizeOptions {
  /// Confidence parameter of the cost exp(-(eta/2) h_i / w_i), with w_i the
  /// weights rescaled to a maximum of 1.
  double eta = 0.9;
};

/// Greedy derandomized basis selection. Identity strings and zero-weight
/// observables do not influence the plan. Letter ties resolve Z, X, Y.
MeasurementPlan derandomize_plan(std::span<const PauliString> observables,
                                 std::span<const double> weights,
                                 std::size_t rounds,
                                 const DerandomizeOptions& options = {});

/// Cost of a finished plan.
double derandomization_cost(std::span<const PauliString> observables,
                            std::span<const double> weights,
                            const MeasurementPlan& plan,
                            const DerandomizeOptions& options = {});

/// Expected cost of a uniformly random plan with the same number of rounds.
double expected_random_cost(std::span<const PauliString> observables,
                            std::span<const double> weights,
                            std::size_t rounds,
                            const DerandomizeOptions& options = {});

/// Number of rounds of the plan that measure each observable.
std::vector<std::size_t> hit_counts(std::span<const PauliString> observables,
                                    const MeasurementPlan& plan);

MeasurementPlan random_plan(int num_qubits, std::size_t rounds,
                            std::uint64_t seed);

std::vector<PauliString> strings_of(const WeightedPauliSum& obs);
std::vector<double> magnitudes_of(const WeightedPauliSum& obs);

/// Qubit-wise commuting groups from RLF coloring of the incompatibility
/// graph. Identity terms join the first group.
std::vector<ObservableGroup> group_qwc_rlf(const WeightedPauliSum& obs);
std::vector<ObservableGroup> group_qwc_largest_first(const WeightedPauliSum& obs);
/// One group per term, i.e. no grouping.
std::vector<ObservableGroup> singleton_groups(const WeightedPauliSum& obs);

/// Throws DomainError unless the groups partition the terms of obs into
/// qubit-wise commuting sets whose shared basis measures every member.
void validate_groups(const std::vector<ObservableGroup>& groups,
                     const WeightedPauliSum& obs);

enum class ShotAllocation { Equal, Weighted };

/// Splits total_shots over groups, giving every group at least one shot
/// when total_shots >= groups.size(). Weighted allocation is proportional to
/// the summed coefficient magnitudes of each group.
std::vector<std::size_t> allocate_shots(const std::vector<ObservableGroup>& groups,
                                        const WeightedPauliSum& obs,
                                        std::size_t total_shots,
                                        ShotAllocation allocation);

/// Sampled per-term expectation values <P_a>. Terms of groups that receive
/// no shots read 0; identity terms always read 1.
std::vector<double> direct_counts_terms(const Statevector& state,
                                        const std::vector<ObservableGroup>& groups,
                                        const WeightedPauliSum& obs,
                                        std::span<const std::size_t> shots_per_group,
                                        std::uint64_t seed);

/// Exact per-term values of the counts estimator in the infinite-shot limit,
/// from the Born distribution of each group's basis.
std::vector<double> direct_counts_terms_exact(
    const Statevector& state, const std::vector<ObservableGroup>& groups,
    const WeightedPauliSum& obs);

/// Real part of sum_a gamma_a <P_a>.
double combine_terms(const WeightedPauliSum& obs, std::span<const double> terms);

double direct_counts_estimate(const Statevector& state,
                              const std::vector<ObservableGroup>& groups,
                              const WeightedPauliSum& obs,
                              std::size_t shots_per_group, std::uint64_t seed);

double direct_counts_estimate(const Statevector& state,
                              const std::vector<ObservableGroup>& groups,
                              const WeightedPauliSum& obs,
                              std::span<const std::size_t> shots_per_group,
                              std::uint64_t seed);

/// Probability-weighted enumeration over outcomes of every group.
double direct_counts_exact(const Statevector& state,
                           const std::vector<ObservableGroup>& groups,
                           const WeightedPauliSum& obs);

}  // namespace shadowsr
