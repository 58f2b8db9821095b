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
#include "shadowsr/pairing.hpp"

#include <bit>
#include <string>

#include "shadowsr/errors.hpp"

namespace shadowsr {

namespace {

void check_spec(const PairingSpec& spec) {
  if (spec.num_levels < 1) throw DimensionError("pairing model needs >= 1 level");
  if (spec.num_levels > kMaxDenseQubits) {
    throw DomainError("pairing model limited to " +
                      std::to_string(kMaxDenseQubits) + " levels");
  }
}

}  // namespace

WeightedPauliSum build_pairing_hamiltonian(const PairingSpec& spec) {
  check_spec(spec);
  const int q = spec.num_levels;
  const double g = spec.coupling;
  std::vector<WeightedPauliSum::Term> terms;
  for (int i = 0; i < q; ++i) {
    // (2 e_i - g) n_i with n_i = (I - Z_i) / 2.
    const double onsite = 2.0 * i * spec.level_spacing - g;
    terms.push_back({0.5 * onsite, PauliString(q)});
    terms.push_back({-0.5 * onsite, PauliString::single(q, i, Pauli::Z)});
  }
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      // P+_i P_j + P+_j P_i = (X_i X_j + Y_i Y_j) / 2.
      for (Pauli p : {Pauli::X, Pauli::Y}) {
        terms.push_back({-0.5 * g, multiply(PauliString::single(q, i, p),
                                            PauliString::single(q, j, p))});
      }
    }
  }
  return WeightedPauliSum(q, terms);
}

std::vector<double> sector_spectrum(const PairingSpec& spec, int n_pairs) {
  check_spec(spec);
  const int q = spec.num_levels;
  if (n_pairs < 0 || n_pairs > q) {
    throw DomainError("pair number " + std::to_string(n_pairs) +
                      " outside [0, " + std::to_string(q) + "]");
  }
  const DenseMatrix h = to_dense(build_pairing_hamiltonian(spec));
  std::vector<Eigen::Index> sector;
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    if (std::popcount(static_cast<std::uint64_t>(k)) == n_pairs) sector.push_back(k);
  }
  const auto n = static_cast<Eigen::Index>(sector.size());
  DenseMatrix block(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) block(r, c) = h(sector[r], sector[c]);
  }
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(block, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double exact_sector_ground_energy(const PairingSpec& spec, int n_pairs) {
  return sector_spectrum(spec, n_pairs).front();
}

}  // namespace shadowsr
