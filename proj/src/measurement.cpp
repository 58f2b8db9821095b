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
#include "shadowsr/measurement.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "shadowsr/coloring.hpp"
#include "shadowsr/errors.hpp"
#include "shadowsr/random.hpp"

namespace shadowsr {

namespace {

constexpr std::array<Basis, 3> kLetterOrder = {Basis::Z, Basis::X, Basis::Y};

struct Target {
  std::vector<std::pair<std::size_t, Basis>> support;  // ascending qubit
  double scaled_weight;                                // max weight -> 1
  double nu;            // 1 - exp(-(eta/2) / scaled_weight)
  double log_future;    // log(1 - nu 3^-k)
  double hits = 0.0;
};

std::vector<Target> make_targets(std::span<const PauliString> observables,
                                 std::span<const double> weights, double eta,
                                 int& num_qubits) {
  if (observables.size() != weights.size()) {
    throw DimensionError("one weight per observable is required");
  }
  if (!(eta > 0.0)) throw DomainError("derandomization eta must be positive");
  num_qubits = observables.empty() ? 0 : observables.front().num_qubits();
  double max_weight = 0.0;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].num_qubits() != num_qubits) {
      throw DimensionError("observables act on different qubit counts");
    }
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw DomainError("derandomization weights must be finite and >= 0");
    }
    if (!observables[i].is_identity()) max_weight = std::max(max_weight, weights[i]);
  }
  std::vector<Target> targets;
  if (max_weight == 0.0) return targets;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].is_identity() || weights[i] == 0.0) continue;
    Target t;
    for (int j = 0; j < num_qubits; ++j) {
      const Pauli p = observables[i][j];
      if (p == Pauli::I) continue;
      t.support.emplace_back(static_cast<std::size_t>(j),
                             basis_from_char(to_char(p)));
    }
    t.scaled_weight = weights[i] / max_weight;
    t.nu = -std::expm1(-0.5 * eta / t.scaled_weight);
    t.log_future = std::log1p(-t.nu * std::pow(3.0, -static_cast<double>(t.support.size())));
    targets.push_back(std::move(t));
  }
  return targets;
}

double log_sum_exp(const std::vector<double>& logs) {
  if (logs.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return top + std::log(sum);
}

bool measures(const std::vector<Basis>& bases, const PauliString& s) {
  for (int j = 0; j < s.num_qubits(); ++j) {
    const Pauli p = s[j];
    if (p != Pauli::I && to_pauli(bases[static_cast<std::size_t>(j)]) != p) {
      return false;
    }
  }
  return true;
}

AdjacencyList incompatibility_graph(const WeightedPauliSum& obs,
                                    const std::vector<std::size_t>& vertices) {
  AdjacencyList graph(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (!qwc_commutes(obs.terms()[vertices[a]].string,
                        obs.terms()[vertices[b]].string)) {
        graph[a].push_back(static_cast<int>(b));
        graph[b].push_back(static_cast<int>(a));
      }
    }
  }
  return graph;
}

std::vector<Basis> shared_basis(const WeightedPauliSum& obs,
                                const std::vector<std::size_t>& members) {
  std::vector<Basis> basis(static_cast<std::size_t>(obs.num_qubits()), Basis::Z);
  for (std::size_t m : members) {
    const auto& letters = obs.terms()[m].string.letters();
    for (std::size_t j = 0; j < letters.size(); ++j) {
      if (letters[j] != Pauli::I) basis[j] = basis_from_char(to_char(letters[j]));
    }
  }
  return basis;
}

template <typename Colorer>
std::vector<ObservableGroup> group_by_coloring(const WeightedPauliSum& obs,
                                               Colorer colorer) {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> identities;
  for (std::size_t a = 0; a < obs.size(); ++a) {
    (obs.terms()[a].string.is_identity() ? identities : vertices).push_back(a);
  }
  const std::vector<int> colors = colorer(incompatibility_graph(obs, vertices));
  std::vector<std::vector<std::size_t>> classes(
      static_cast<std::size_t>(color_count(colors)));
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    classes[static_cast<std::size_t>(colors[v])].push_back(vertices[v]);
  }
  if (classes.empty() && !identities.empty()) classes.emplace_back();
  if (!identities.empty()) {
    classes.front().insert(classes.front().begin(), identities.begin(),
                           identities.end());
  }
  std::vector<ObservableGroup> groups;
  for (auto& members : classes) {
    std::sort(members.begin(), members.end());
    groups.push_back({members, shared_basis(obs, members)});
  }
  return groups;
}

// Bit mask of the non-identity qubits of a string.
std::uint64_t support_mask(const PauliString& s) {
  std::uint64_t mask = 0;
  for (int j = 0; j < s.num_qubits(); ++j) {
    if (s[j] != Pauli::I) mask |= std::uint64_t{1} << j;
  }
  return mask;
}

void check_groups_cover(const std::vector<ObservableGroup>& groups,
                        const WeightedPauliSum& obs, const Statevector& state) {
  if (state.num_qubits() != obs.num_qubits()) {
    throw DimensionError("state and observable qubit counts differ");
  }
  validate_groups(groups, obs);
}

std::vector<double> cumulative(std::vector<double> probs) {
  std::partial_sum(probs.begin(), probs.end(), probs.begin());
  return probs;
}

}  // namespace

std::string to_string(PlanProvenance p) {
  switch (p) {
    case PlanProvenance::Random: return "random";
    case PlanProvenance::Derandomized: return "derandomized";
    case PlanProvenance::GroupedCounts: return "grouped-counts";
  }
  return "random";
}

PlanProvenance provenance_from_string(std::string_view text) {
  if (text == "random") return PlanProvenance::Random;
  if (text == "derandomized") return PlanProvenance::Derandomized;
  if (text == "grouped-counts") return PlanProvenance::GroupedCounts;
  throw ParseError("unknown plan provenance '" + std::string(text) + "'");
}

std::uint64_t shadow_norm_bound(std::span<const PauliString> observables,
                                double epsilon, double constant) {
  if (observables.empty()) throw DomainError("shadow_norm_bound needs observables");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(constant > 0.0)) throw DomainError("bound constant must be positive");
  int max_weight = 0;
  for (const auto& s : observables) max_weight = std::max(max_weight, s.weight());
  const double log_l = std::max(std::log(static_cast<double>(observables.size())), 1.0);
  const double value = constant * log_l * std::pow(3.0, max_weight) / (epsilon * epsilon);
  return static_cast<std::uint64_t>(std::ceil(value));
}

MeasurementPlan derandomize_plan(std::span<const PauliString> observables,
                                 std::span<const double> weights,
                                 std::size_t rounds,
                                 const DerandomizeOptions& options) {
  if (rounds == 0) throw DomainError("a plan needs at least one round");
  int q = 0;
  std::vector<Target> targets = make_targets(observables, weights, options.eta, q);
  if (observables.empty()) throw DomainError("derandomize_plan needs observables");

  MeasurementPlan plan{q, {}, PlanProvenance::Derandomized};
  plan.rounds.reserve(rounds);
  std::vector<double> base(targets.size());
  std::vector<double> logs(targets.size());
  for (std::size_t m = 0; m < rounds; ++m) {
    const double later = static_cast<double>(rounds - m - 1);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const Target& t = targets[i];
      base[i] = -0.5 * options.eta * t.hits / t.scaled_weight + later * t.log_future;
    }
    std::vector<Basis> bases(static_cast<std::size_t>(q), Basis::Z);
    for (std::size_t j = 0; j < static_cast<std::size_t>(q); ++j) {
      double best_cost = std::numeric_limits<double>::infinity();
      Basis best = Basis::Z;
      for (Basis letter : kLetterOrder) {
        bases[j] = letter;
        for (std::size_t i = 0; i < targets.size(); ++i) {
          const Target& t = targets[i];
          int open = 0;
          bool alive = true;
          for (const auto& [qubit, want] : t.support) {
            if (qubit > j) {
              ++open;
            } else if (bases[qubit] != want) {
              alive = false;
              break;
            }
          }
          const double p_hit = alive ? std::pow(3.0, -open) : 0.0;
          logs[i] = base[i] + std::log1p(-t.nu * p_hit);
        }
        const double cost = log_sum_exp(logs);
        if (cost < best_cost) {
          best_cost = cost;
          best = letter;
        }
      }
      bases[j] = best;
    }
    for (auto& t : targets) {
      const bool hit = std::all_of(t.support.begin(), t.support.end(),
                                   [&](const auto& sq) { return bases[sq.first] == sq.second; });
      if (hit) t.hits += 1.0;
    }
    plan.rounds.push_back(std::move(bases));
  }
  return plan;
}

double derandomization_cost(std::span<const PauliString> observables,
                            std::span<const double> weights,
                            const MeasurementPlan& plan,
                            const DerandomizeOptions& options) {
  int q = 0;
  const std::vector<Target> targets = make_targets(observables, weights, options.eta, q);
  const std::vector<std::size_t> hits = hit_counts(observables, plan);
  double cost = 0.0;
  std::size_t t = 0;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].is_identity() || weights[i] == 0.0) continue;
    cost += std::exp(-0.5 * options.eta * static_cast<double>(hits[i]) /
                     targets[t].scaled_weight);
    ++t;
  }
  return cost;
}

double expected_random_cost(std::span<const PauliString> observables,
                            std::span<const double> weights, std::size_t rounds,
                            const DerandomizeOptions& options) {
  int q = 0;
  double cost = 0.0;
  for (const auto& t : make_targets(observables, weights, options.eta, q)) {
    cost += std::exp(static_cast<double>(rounds) * t.log_future);
  }
  return cost;
}

std::vector<std::size_t> hit_counts(std::span<const PauliString> observables,
                                    const MeasurementPlan& plan) {
  std::vector<std::size_t> hits(observables.size(), 0);
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].num_qubits() != plan.num_qubits) {
      throw DimensionError("observable and plan qubit counts differ");
    }
    for (const auto& bases : plan.rounds) {
      if (measures(bases, observables[i])) ++hits[i];
    }
  }
  return hits;
}

MeasurementPlan random_plan(int num_qubits, std::size_t rounds, std::uint64_t seed) {
  if (num_qubits < 1) throw DimensionError("plan needs >= 1 qubit");
  MeasurementPlan plan{num_qubits, {}, PlanProvenance::Random};
  Rng rng(seed);
  plan.rounds.resize(rounds);
  for (auto& bases : plan.rounds) {
    bases.resize(static_cast<std::size_t>(num_qubits));
    for (auto& b : bases) b = static_cast<Basis>(rng.below(3));
  }
  return plan;
}

std::vector<PauliString> strings_of(const WeightedPauliSum& obs) {
  std::vector<PauliString> out;
  out.reserve(obs.size());
  for (const auto& t : obs.terms()) out.push_back(t.string);
  return out;
}

std::vector<double> magnitudes_of(const WeightedPauliSum& obs) {
  std::vector<double> out;
  out.reserve(obs.size());
  for (const auto& t : obs.terms()) out.push_back(std::abs(t.coefficient));
  return out;
}

std::vector<ObservableGroup> group_qwc_rlf(const WeightedPauliSum& obs) {
  return group_by_coloring(obs, color_rlf);
}

std::vector<ObservableGroup> group_qwc_largest_first(const WeightedPauliSum& obs) {
  return group_by_coloring(obs, color_largest_first);
}

std::vector<ObservableGroup> singleton_groups(const WeightedPauliSum& obs) {
  std::vector<ObservableGroup> groups;
  for (std::size_t a = 0; a < obs.size(); ++a) {
    groups.push_back({{a}, shared_basis(obs, {a})});
  }
  return groups;
}

void validate_groups(const std::vector<ObservableGroup>& groups,
                     const WeightedPauliSum& obs) {
  std::vector<int> seen(obs.size(), 0);
  for (const auto& g : groups) {
    if (g.shared_basis.size() != static_cast<std::size_t>(obs.num_qubits())) {
      throw DimensionError("group basis length does not match the observable");
    }
    for (std::size_t a : g.members) {
      if (a >= obs.size()) throw DomainError("group member index out of range");
      ++seen[a];
      if (!measures(g.shared_basis, obs.terms()[a].string)) {
        throw DomainError("group basis does not measure member " +
                          obs.terms()[a].string.letter_string());
      }
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw DomainError("groups must cover every term exactly once");
  }
}

std::vector<std::size_t> allocate_shots(const std::vector<ObservableGroup>& groups,
                                        const WeightedPauliSum& obs,
                                        std::size_t total_shots,
                                        ShotAllocation allocation) {
  const std::size_t n = groups.size();
  std::vector<std::size_t> shots(n, 0);
  if (n == 0) return shots;
  std::vector<double> weight(n, 1.0);
  if (allocation == ShotAllocation::Weighted) {
    for (std::size_t g = 0; g < n; ++g) {
      weight[g] = 0.0;
      for (std::size_t a : groups[g].members) {
        if (!obs.terms()[a].string.is_identity()) {
          weight[g] += std::abs(obs.terms()[a].coefficient);
        }
      }
    }
  }
  std::size_t budget = total_shots;
  if (total_shots >= n) {
    std::fill(shots.begin(), shots.end(), 1);
    budget -= n;
  }
  double total_weight = std::accumulate(weight.begin(), weight.end(), 0.0);
  if (total_weight == 0.0) {
    std::fill(weight.begin(), weight.end(), 1.0);
    total_weight = static_cast<double>(n);
  }
  // Largest remainder apportionment of the budget.
  std::vector<double> remainder(n);
  std::size_t given = 0;
  for (std::size_t g = 0; g < n; ++g) {
    const double ideal = static_cast<double>(budget) * weight[g] / total_weight;
    const auto whole = static_cast<std::size_t>(std::floor(ideal));
    shots[g] += whole;
    given += whole;
    remainder[g] = ideal - static_cast<double>(whole);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t r = 0; given < budget; ++r, ++given) ++shots[order[r % n]];
  return shots;
}

std::vector<double> direct_counts_terms(const Statevector& state,
                                        const std::vector<ObservableGroup>& groups,
                                        const WeightedPauliSum& obs,
                                        std::span<const std::size_t> shots_per_group,
                                        std::uint64_t seed) {
  check_groups_cover(groups, obs, state);
  if (shots_per_group.size() != groups.size()) {
    throw DimensionError("one shot count per group is required");
  }
  std::vector<double> values(obs.size(), 0.0);
  for (std::size_t a = 0; a < obs.size(); ++a) {
    if (obs.terms()[a].string.is_identity()) values[a] = 1.0;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& members = groups[g].members;
    const std::size_t shots = shots_per_group[g];
    if (shots == 0) continue;
    std::vector<std::uint64_t> masks;
    for (std::size_t a : members) masks.push_back(support_mask(obs.terms()[a].string));
    const std::vector<double> cdf =
        cumulative(basis_probabilities(state, groups[g].shared_basis));
    Rng rng(derive_seed(seed, g));
    std::vector<long long> sums(members.size(), 0);
    for (std::size_t s = 0; s < shots; ++s) {
      const std::uint64_t k = sample_index(cdf, rng);
      for (std::size_t i = 0; i < members.size(); ++i) {
        sums[i] += (std::popcount(k & masks[i]) & 1) ? -1 : 1;
      }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      values[members[i]] = static_cast<double>(sums[i]) / static_cast<double>(shots);
    }
  }
  return values;
}

std::vector<double> direct_counts_terms_exact(
    const Statevector& state, const std::vector<ObservableGroup>& groups,
    const WeightedPauliSum& obs) {
  check_groups_cover(groups, obs, state);
  std::vector<double> values(obs.size(), 0.0);
  for (const auto& group : groups) {
    const std::vector<double> probs = basis_probabilities(state, group.shared_basis);
    for (std::size_t a : group.members) {
      const std::uint64_t mask = support_mask(obs.terms()[a].string);
      double v = 0.0;
      for (std::size_t k = 0; k < probs.size(); ++k) {
        v += (std::popcount(k & mask) & 1) ? -probs[k] : probs[k];
      }
      values[a] = v;
    }
  }
  return values;
}

double combine_terms(const WeightedPauliSum& obs, std::span<const double> terms) {
  if (terms.size() != obs.size()) throw DimensionError("one value per term is required");
  double total = 0.0;
  for (std::size_t a = 0; a < obs.size(); ++a) {
    total += (obs.terms()[a].coefficient * terms[a]).real();
  }
  return total;
}

double direct_counts_estimate(const Statevector& state,
                              const std::vector<ObservableGroup>& groups,
                              const WeightedPauliSum& obs,
                              std::size_t shots_per_group, std::uint64_t seed) {
  const std::vector<std::size_t> shots(groups.size(), shots_per_group);
  return direct_counts_estimate(state, groups, obs, shots, seed);
}

double direct_counts_estimate(const Statevector& state,
                              const std::vector<ObservableGroup>& groups,
                              const WeightedPauliSum& obs,
                              std::span<const std::size_t> shots_per_group,
                              std::uint64_t seed) {
  return combine_terms(obs, direct_counts_terms(state, groups, obs, shots_per_group, seed));
}

double direct_counts_exact(const Statevector& state,
                           const std::vector<ObservableGroup>& groups,
                           const WeightedPauliSum& obs) {
  return combine_terms(obs, direct_counts_terms_exact(state, groups, obs));
}

}  // namespace shadowsr
