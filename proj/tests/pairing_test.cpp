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

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "shadowsr/errors.hpp"
#include "shadowsr/pairing.hpp"
#include "shadowsr/projectors.hpp"

namespace shadowsr {
namespace {

std::vector<double> dense_eigenvalues(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m);
  const Eigen::VectorXd v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

TEST(PairingHamiltonian, HermitianAndAtMostTwoLocal) {
  for (int q = 1; q <= 6; ++q) {
    const auto h = build_pairing_hamiltonian(PairingSpec{q, 1.0, 0.7});
    EXPECT_TRUE(h.is_hermitian());
    for (const auto& t : h.terms()) {
      EXPECT_LE(t.string.weight(), 2);
      EXPECT_NEAR(t.coefficient.imag(), 0.0, 1e-15);
    }
  }
  EXPECT_EQ(build_pairing_hamiltonian(PairingSpec{4, 1.0, 1.0}).size(), 17U);
}

TEST(PairingHamiltonian, MatchesFermionicConstruction) {
  for (int q = 1; q <= 6; ++q) {
    for (double g : {0.0, 0.5, 1.0, -0.8}) {
      for (double spacing : {1.0, 0.3}) {
        const DenseMatrix h = to_dense(build_pairing_hamiltonian(PairingSpec{q, spacing, g}));
        const oracle::Matrix f = oracle::fermionic_pairing(q, spacing, g);
        EXPECT_LT((h - f).cwiseAbs().maxCoeff(), 1e-10) << q << " " << g;
      }
    }
  }
}

TEST(PairingHamiltonian, ConservesPairNumber) {
  for (int q = 2; q <= 5; ++q) {
    const DenseMatrix h = to_dense(build_pairing_hamiltonian(PairingSpec{q, 1.0, 1.3}));
    const DenseMatrix n = to_dense(number_operator(q));
    EXPECT_LT((h * n - n * h).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PairingHamiltonian, NonInteractingSpectrum) {
  const PairingSpec spec{2, 1.0, 0.0};
  auto all = dense_eigenvalues(to_dense(build_pairing_hamiltonian(spec)));
  const std::vector<double> expected{0.0, 0.0, 2.0, 2.0};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(all[k], expected[k], 1e-12);
  EXPECT_NEAR(exact_sector_ground_energy(spec, 1), 0.0, 1e-12);
  // Two pairs in four levels fill levels 0 and 1.
  EXPECT_NEAR(exact_sector_ground_energy(PairingSpec{4, 1.0, 0.0}, 2), 2.0, 1e-12);
}

TEST(PairingHamiltonian, SingleLevelClosedForm) {
  for (double g : {0.0, 0.4, 2.0}) {
    for (double spacing : {1.0, 2.5}) {
      const PairingSpec spec{1, spacing, g};
      EXPECT_NEAR(exact_sector_ground_energy(spec, 1), -g, 1e-12);
      EXPECT_NEAR(exact_sector_ground_energy(spec, 0), 0.0, 1e-12);
    }
  }
}

TEST(PairingHamiltonian, TwoLevelFixture) {
  const PairingSpec spec{2, 1.0, 0.5};
  const auto all = dense_eigenvalues(to_dense(build_pairing_hamiltonian(spec)));
  const std::vector<double> fixture{-0.6180339887498949, 0.0, 1.0, 1.6180339887498949};
  ASSERT_EQ(all.size(), 4U);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(all[k], fixture[k], 1e-10);
  EXPECT_NEAR(exact_sector_ground_energy(spec, 0), 0.0, 1e-12);
  EXPECT_NEAR(exact_sector_ground_energy(spec, 1), -0.6180339887498949, 1e-10);
  EXPECT_NEAR(exact_sector_ground_energy(spec, 2), 1.0, 1e-12);
  const auto one_pair = sector_spectrum(spec, 1);
  ASSERT_EQ(one_pair.size(), 2U);
  EXPECT_NEAR(one_pair[1], 1.6180339887498949, 1e-10);
}

TEST(PairingHamiltonian, FourLevelFixture) {
  EXPECT_NEAR(exact_sector_ground_energy(PairingSpec{4, 1.0, 1.0}, 2), -1.4896521553638464, 1e-10);
}

TEST(PairingHamiltonian, SectorSpectraUnionIsFullSpectrum) {
  const PairingSpec spec{5, 0.8, 0.6};
  std::vector<double> merged;
  for (int n = 0; n <= 5; ++n) {
    const auto part = sector_spectrum(spec, n);
    EXPECT_TRUE(std::is_sorted(part.begin(), part.end()));
    merged.insert(merged.end(), part.begin(), part.end());
  }
  std::sort(merged.begin(), merged.end());
  const auto full = dense_eigenvalues(oracle::fermionic_pairing(5, 0.8, 0.6));
  ASSERT_EQ(merged.size(), full.size());
  for (std::size_t k = 0; k < full.size(); ++k) EXPECT_NEAR(merged[k], full[k], 1e-10);
}

TEST(PairingHamiltonian, SectorErrors) {
  const PairingSpec spec{3, 1.0, 1.0};
  EXPECT_THROW(exact_sector_ground_energy(spec, 4), DomainError);
  EXPECT_THROW(exact_sector_ground_energy(spec, -1), DomainError);
  EXPECT_THROW(build_pairing_hamiltonian(PairingSpec{0, 1.0, 1.0}), DimensionError);
}

}  // namespace
}  // namespace shadowsr
