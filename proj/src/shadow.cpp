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
#include "shadowsr/shadow.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "shadowsr/errors.hpp"

namespace shadowsr {

namespace {

// Cumulative Born distributions per basis setting. Caching stops paying off
// (and costs memory) beyond a handful of qubits.
class DistributionCache {
 public:
  explicit DistributionCache(const Statevector& state) : state_(state) {}

  const std::vector<double>& cdf(std::span<const Basis> bases) {
    if (state_.num_qubits() > 8) {
      scratch_ = build(bases);
      return scratch_;
    }
    std::uint64_t key = 0;
    for (auto it = bases.rbegin(); it != bases.rend(); ++it) {
      key = key * 3 + static_cast<std::uint64_t>(*it);
    }
    auto [pos, inserted] = cache_.try_emplace(key);
    if (inserted) pos->second = build(bases);
    return pos->second;
  }

 private:
  std::vector<double> build(std::span<const Basis> bases) const {
    std::vector<double> c = basis_probabilities(state_, bases);
    std::partial_sum(c.begin(), c.end(), c.begin());
    return c;
  }

  const Statevector& state_;
  std::unordered_map<std::uint64_t, std::vector<double>> cache_;
  std::vector<double> scratch_;
};

Snapshot measure(std::vector<Basis> bases,
                 DistributionCache& cache, Rng& rng) {
  const std::uint64_t k = sample_index(cache.cdf(bases), rng);
  Snapshot snap{std::move(bases), {}};
  snap.outcome.resize(snap.bases.size());
  for (std::size_t j = 0; j < snap.outcome.size(); ++j) {
    snap.outcome[j] = (k >> j) & 1;
  }
  return snap;
}

void check_obs(const ClassicalShadow& shadow, const WeightedPauliSum& obs) {
  if (shadow.num_qubits() != obs.num_qubits()) {
    throw DimensionError("shadow and observable qubit counts differ");
  }
}

// Snapshot trace of a whole observable.
Complex snapshot_value(const Snapshot& snap, const WeightedPauliSum& obs) {
  Complex total = 0.0;
  for (const auto& term : obs.terms()) {
    total += term.coefficient * snapshot_trace(snap, term.string);
  }
  return total;
}

}  // namespace

ClassicalShadow::ClassicalShadow(int num_qubits,
                                 std::vector<Snapshot> snapshots,
                                 std::uint64_t seed, BasisSource source)
    : num_qubits_(num_qubits),
      snapshots_(std::move(snapshots)),
      seed_(seed),
      source_(source) {
  if (num_qubits < 1) throw DimensionError("shadow needs >= 1 qubit");
  for (const auto& s : snapshots_) {
    if (s.num_qubits() != num_qubits ||
        s.outcome.size() != static_cast<std::size_t>(num_qubits)) {
      throw DimensionError("snapshot length does not match the shadow");
    }
    for (auto bit : s.outcome) {
      if (bit > 1) throw DomainError("snapshot outcome bits must be 0 or 1");
    }
  }
}

ClassicalShadow acquire_shadow(const Statevector& state, std::size_t shots,
                               std::uint64_t seed) {
  if (shots == 0) throw DomainError("a shadow needs at least one snapshot");
  const auto q = static_cast<std::size_t>(state.num_qubits());
  DistributionCache cache(state);
  std::vector<Snapshot> snapshots;
  snapshots.reserve(shots);
  for (std::size_t n = 0; n < shots; ++n) {
    Rng rng(derive_seed(seed, n));
    std::vector<Basis> bases(q);
    for (auto& b : bases) b = static_cast<Basis>(rng.below(3));
    snapshots.push_back(measure(std::move(bases), cache, rng));
  }
  return ClassicalShadow(state.num_qubits(), std::move(snapshots), seed,
                         BasisSource::UniformRandom);
}

ClassicalShadow acquire_shadow(const Statevector& state,
                               std::span<const std::vector<Basis>> plan,
                               std::uint64_t seed) {
  if (plan.empty()) throw DomainError("a shadow needs at least one snapshot");
  DistributionCache cache(state);
  std::vector<Snapshot> snapshots;
  snapshots.reserve(plan.size());
  for (std::size_t n = 0; n < plan.size(); ++n) {
    if (plan[n].size() != static_cast<std::size_t>(state.num_qubits())) {
      throw DimensionError("plan entry length does not match the state");
    }
    Rng rng(derive_seed(seed, n));
    snapshots.push_back(measure(plan[n], cache, rng));
  }
  return ClassicalShadow(state.num_qubits(), std::move(snapshots), seed,
                         BasisSource::Prescribed);
}

int qubit_trace_factor(Basis basis, int outcome_bit, Pauli p) {
  if (p == Pauli::I) return 1;
  if (to_pauli(basis) != p) return 0;
  return outcome_bit ? -3 : 3;
}

Complex snapshot_trace(const Snapshot& snapshot, const PauliString& string) {
  if (snapshot.num_qubits() != string.num_qubits()) {
    throw DimensionError("snapshot and Pauli string qubit counts differ");
  }
  int value = 1;
  for (std::size_t j = 0; j < snapshot.bases.size(); ++j) {
    value *= qubit_trace_factor(snapshot.bases[j], snapshot.outcome[j],
                                string.letters()[j]);
    if (value == 0) return 0.0;
  }
  return string.phase() * static_cast<double>(value);
}

std::vector<WeightedSnapshot> tally(const ClassicalShadow& shadow) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<WeightedSnapshot> out;
  const double w = 1.0 / static_cast<double>(shadow.size());
  std::string key(static_cast<std::size_t>(shadow.num_qubits()), '\0');
  for (const auto& snap : shadow.snapshots()) {
    for (std::size_t j = 0; j < key.size(); ++j) {
      key[j] = static_cast<char>(static_cast<int>(snap.bases[j]) * 2 +
                                 snap.outcome[j]);
    }
    auto [pos, inserted] = index.try_emplace(key, out.size());
    if (inserted) {
      out.push_back({snap, w});
    } else {
      out[pos->second].weight += w;
    }
  }
  return out;
}

Complex weighted_trace(std::span<const WeightedSnapshot> snapshots,
                       const WeightedPauliSum& obs) {
  Complex total = 0.0;
  for (const auto& ws : snapshots) {
    total += ws.weight * snapshot_value(ws.snapshot, obs);
  }
  return total;
}

Complex compatible_count_estimate(const ClassicalShadow& shadow,
                                  const WeightedPauliSum& obs) {
  check_obs(shadow, obs);
  Complex total = 0.0;
  for (const auto& term : obs.terms()) {
    const auto& letters = term.string.letters();
    long long sum = 0;
    std::size_t hits = 0;
    for (const auto& snap : shadow.snapshots()) {
      int parity = 1;
      bool compatible = true;
      for (std::size_t j = 0; j < letters.size(); ++j) {
        if (letters[j] == Pauli::I) continue;
        if (to_pauli(snap.bases[j]) != letters[j]) {
          compatible = false;
          break;
        }
        if (snap.outcome[j]) parity = -parity;
      }
      if (!compatible) continue;
      ++hits;
      sum += parity;
    }
    if (hits > 0) {
      total += term.coefficient * (static_cast<double>(sum) /
                                   static_cast<double>(hits));
    }
  }
  return total;
}

std::size_t coverage(const ClassicalShadow& shadow, const PauliString& string) {
  if (shadow.num_qubits() != string.num_qubits()) {
    throw DimensionError("shadow and Pauli string qubit counts differ");
  }
  const auto& letters = string.letters();
  return static_cast<std::size_t>(std::count_if(
      shadow.snapshots().begin(), shadow.snapshots().end(),
      [&](const Snapshot& snap) {
        for (std::size_t j = 0; j < letters.size(); ++j) {
          if (letters[j] != Pauli::I && to_pauli(snap.bases[j]) != letters[j]) {
            return false;
          }
        }
        return true;
      }));
}

double estimate(const ClassicalShadow& shadow, const WeightedPauliSum& obs,
                const EstimatorOptions& options) {
  check_obs(shadow, obs);
  if (shadow.size() == 0) throw DomainError("cannot estimate from an empty shadow");
  if (shadow.source() == BasisSource::Prescribed) {
    return compatible_count_estimate(shadow, obs).real();
  }
  if (!options.median_of_means) {
    return weighted_trace(tally(shadow), obs).real();
  }
  const std::size_t m = shadow.size();
  const std::size_t blocks =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.blocks, 1)), 1, m);
  std::vector<double> means;
  means.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * m / blocks;
    const std::size_t hi = (b + 1) * m / blocks;
    double sum = 0.0;
    for (std::size_t n = lo; n < hi; ++n) {
      sum += snapshot_value(shadow.snapshots()[n], obs).real();
    }
    means.push_back(sum / static_cast<double>(hi - lo));
  }
  const auto mid = means.begin() + static_cast<std::ptrdiff_t>(means.size() / 2);
  std::nth_element(means.begin(), mid, means.end());
  if (means.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(means.begin(), mid);
  return 0.5 * (lower + upper);
}

DenseMatrix snapshot_density(const Snapshot& snapshot) {
  const int q = snapshot.num_qubits();
  if (q > kMaxReconstructQubits) {
    throw DomainError("dense snapshot limited to " +
                      std::to_string(kMaxReconstructQubits) + " qubits");
  }
  std::vector<Matrix2> local(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) {
    const Matrix2 u = gates::readout(snapshot.bases[static_cast<std::size_t>(j)]);
    const int b = snapshot.outcome[static_cast<std::size_t>(j)];
    // U^dagger |b><b| U is the outer product of row b of U.
    const Eigen::RowVector2cd row = u.row(b);
    local[static_cast<std::size_t>(j)] =
        3.0 * (row.adjoint() * row) - Matrix2::Identity();
  }
  const Eigen::Index dim = Eigen::Index{1} << q;
  DenseMatrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      Complex v = 1.0;
      for (int j = 0; j < q; ++j) {
        v *= local[static_cast<std::size_t>(j)]((r >> j) & 1, (c >> j) & 1);
      }
      out(r, c) = v;
    }
  }
  return out;
}

DenseMatrix reconstruct_density(std::span<const WeightedSnapshot> snapshots,
                                int num_qubits) {
  if (num_qubits > kMaxReconstructQubits) {
    throw DomainError("density reconstruction limited to " +
                      std::to_string(kMaxReconstructQubits) + " qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  DenseMatrix rho = DenseMatrix::Zero(dim, dim);
  for (const auto& ws : snapshots) rho += ws.weight * snapshot_density(ws.snapshot);
  return rho;
}

DenseMatrix reconstruct_density(const ClassicalShadow& shadow) {
  if (shadow.num_qubits() > kMaxReconstructQubits) {
    throw DomainError("density reconstruction limited to " +
                      std::to_string(kMaxReconstructQubits) + " qubits");
  }
  return reconstruct_density(tally(shadow), shadow.num_qubits());
}

}  // namespace shadowsr
