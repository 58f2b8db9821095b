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

#include <bit>
#include <random>

#include "oracles.hpp"
#include "shadowsr/errors.hpp"
#include "shadowsr/projectors.hpp"
#include "shadowsr/states.hpp"

namespace shadowsr {
namespace {

double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Dense LCU assembled in the test from the stored gate matrices. Qubit 0 is
// the least significant index bit.
oracle::Matrix dense_lcu(const ProjectorLCU& p) {
  const Eigen::Index dim = Eigen::Index{1} << p.num_qubits();
  oracle::Matrix out = oracle::Matrix::Zero(dim, dim);
  for (const auto& term : p.terms()) {
    oracle::Matrix product = oracle::Matrix::Ones(1, 1);
    for (int j = p.num_qubits() - 1; j >= 0; --j) {
      product = oracle::kron(product, term.gates[static_cast<std::size_t>(j)].matrix());
    }
    out += term.beta * product;
  }
  return out;
}

std::vector<ProjectorLCU> every_family(int q, int mesh) {
  std::vector<ProjectorLCU> out;
  for (const SymmetryLabel& family :
       {SymmetryLabel{ParityLabel{1}}, SymmetryLabel{NumberLabel{0}},
        SymmetryLabel{SpinLabel{q % 2, q % 2, mesh}}}) {
    for (const auto& label : all_sectors(q, family)) out.push_back(make_projector(q, label));
  }
  return out;
}

TEST(ParityProjector, TwoQubitEven) {
  const auto p = parity_projector(2, +1);
  EXPECT_EQ(p.terms().size(), 2U);
  DenseMatrix expected = DenseMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 1.0;
  EXPECT_LT(max_abs(to_dense(p) - expected), 1e-15);
  EXPECT_THROW(parity_projector(2, 0), DomainError);
}

TEST(ParityAndNumber, IdempotentHermitianComplete) {
  for (int q = 1; q <= 4; ++q) {
    const Eigen::Index dim = Eigen::Index{1} << q;
    DenseMatrix sum = DenseMatrix::Zero(dim, dim);
    for (int eps : {1, -1}) {
      const DenseMatrix p = to_dense(parity_projector(q, eps));
      EXPECT_LT(max_abs(p * p - p), 1e-10);
      EXPECT_LT(max_abs(p - p.adjoint()), 1e-10);
      EXPECT_LT(max_abs(p - oracle::parity_projector(q, eps)), 1e-12);
      sum += p;
    }
    EXPECT_LT(max_abs(sum - DenseMatrix::Identity(dim, dim)), 1e-10);

    sum.setZero();
    for (int n = 0; n <= q; ++n) {
      const auto lcu = number_projector(q, n);
      EXPECT_EQ(lcu.terms().size(), static_cast<std::size_t>(q + 1));
      const DenseMatrix p = to_dense(lcu);
      EXPECT_LT(max_abs(p * p - p), 1e-10);
      EXPECT_LT(max_abs(p - p.adjoint()), 1e-10);
      EXPECT_LT(max_abs(p - oracle::popcount_projector(q, n)), 1e-12);
      sum += p;
    }
    EXPECT_LT(max_abs(sum - DenseMatrix::Identity(dim, dim)), 1e-10);
  }
}

TEST(NumberProjector, EigenstateAndDomain) {
  const auto s = Statevector::basis_state(4, 0b0011);
  const auto v = exact_lcu_expectation(s, WeightedPauliSum::identity(4), number_projector(4, 2));
  EXPECT_NEAR(v.norm, 1.0, 1e-12);
  EXPECT_THROW(number_projector(4, 5), DomainError);
  EXPECT_THROW(number_projector(4, -1), DomainError);
}

TEST(NumberOperator, CountsOnes) {
  const DenseMatrix n = to_dense(number_operator(3));
  for (Eigen::Index k = 0; k < 8; ++k) {
    EXPECT_NEAR(n(k, k).real(), std::popcount(static_cast<unsigned>(k)), 1e-14);
  }
}

TEST(SpinProjector, SingletAndStretchedStates) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd singlet(0, r, -r, 0);
  const auto id = WeightedPauliSum::identity(2);
  const auto v = exact_lcu_expectation(Statevector(2, singlet), id, spin_projector(2, 0, 0, 10));
  EXPECT_NEAR(v.norm, 1.0, 0.02);
  const auto w = exact_lcu_expectation(Statevector(2), id, spin_projector(2, 2, 2, 10));
  EXPECT_NEAR(w.norm, 1.0, 0.02);
  EXPECT_EQ(spin_projector(2, 0, 0, 10).terms().size(), 1000U);
}

TEST(SpinProjector, RejectsIncompatibleLabels) {
  EXPECT_THROW(spin_projector(4, 1, 1, 10), DomainError);   // s = 1/2 with 4 qubits
  EXPECT_THROW(spin_projector(4, 6, 0, 10), DomainError);   // s > q/2
  EXPECT_THROW(spin_projector(4, 2, 4, 10), DomainError);   // |m| > s
  EXPECT_THROW(spin_projector(4, 2, 1, 10), DomainError);   // m - s not integer
  EXPECT_THROW(spin_projector(4, 2, 0, 1), DomainError);
}

TEST(SpinProjector, ExactEigenprojectorMatchesDenseOracle) {
  for (int q = 1; q <= 4; ++q) {
    const oracle::Matrix s2 = oracle::spin_squared(q);
    const oracle::Matrix sz = oracle::spin_z(q);
    for (const auto& label : all_sectors(q, SpinLabel{q % 2, q % 2, 4})) {
      const auto& s = std::get<SpinLabel>(label);
      const oracle::Matrix expected =
          oracle::eigenspace_projector(s2, 0.25 * s.two_s * (s.two_s + 2)) *
          oracle::eigenspace_projector(sz, 0.5 * s.two_m);
      EXPECT_LT(max_abs(exact_spin_eigenprojector(q, s.two_s, s.two_m) - expected), 1e-10);
    }
  }
}

TEST(SpinProjector, DiscretizationConvergesMonotonically) {
  const int q = 4;
  double previous = 1e9;
  for (int mesh : {4, 8, 16, 32}) {
    double worst = 0.0;
    for (const auto& label : all_sectors(q, SpinLabel{0, 0, mesh})) {
      const auto& s = std::get<SpinLabel>(label);
      worst = std::max(worst, max_abs(to_dense(make_projector(q, label)) -
                                      exact_spin_eigenprojector(q, s.two_s, s.two_m)));
    }
    EXPECT_LT(worst, previous) << mesh;
    previous = worst;
  }
  EXPECT_LT(previous, 2e-3);
}

TEST(SpinProjector, CompletenessAtTenPoints) {
  const int q = 4;
  DenseMatrix sum = DenseMatrix::Zero(16, 16);
  for (const auto& label : all_sectors(q, SpinLabel{0, 0, 10})) {
    sum += to_dense(make_projector(q, label));
  }
  EXPECT_LT(max_abs(sum - DenseMatrix::Identity(16, 16)), 0.02);
}

TEST(Projectors, DenseMatchesTestAssembly) {
  for (int q = 1; q <= 3; ++q) {
    for (const auto& p : every_family(q, 4)) {
      EXPECT_LT(max_abs(to_dense(p) - dense_lcu(p)), 1e-12);
    }
  }
}

TEST(Projectors, AllSectorsAndLabels) {
  EXPECT_EQ(all_sectors(4, ParityLabel{1}).size(), 2U);
  EXPECT_EQ(all_sectors(4, NumberLabel{0}).size(), 5U);
  EXPECT_EQ(all_sectors(4, SpinLabel{0, 0, 10}).size(), 9U);
  EXPECT_EQ(all_sectors(3, SpinLabel{1, 1, 10}).size(), 6U);
  EXPECT_EQ(all_sectors(3, IdentityLabel{}).size(), 1U);
  EXPECT_EQ(describe(ParityLabel{-1}), "parity=-1");
  EXPECT_EQ(describe(NumberLabel{2}), "n0=2");
  EXPECT_EQ(describe(SpinLabel{3, -1, 10}), "s=3/2;m=-1/2");
  EXPECT_EQ(describe(SpinLabel{2, 0, 10}), "s=1;m=0");
}

TEST(ExpandProduct, MatchesDenseProduct) {
  std::mt19937_64 rng(21);
  for (int q = 1; q <= 3; ++q) {
    const auto o = oracle::random_observable(q, 4, rng);
    for (const auto& p : every_family(q, 4)) {
      const auto expanded = expand_product(o, p);
      EXPECT_LT(max_abs(oracle::dense(expanded) - oracle::dense(o) * dense_lcu(p)), 1e-10);
    }
  }
}

TEST(ProjectedEstimate, IdentityProjectorReducesToPlainEstimate) {
  std::mt19937_64 rng(2);
  const Statevector s(3, oracle::random_state(3, rng));
  const auto shadow = acquire_shadow(s, 400, 6);
  const auto o = oracle::random_observable(3, 6, rng);
  const auto e = projected_estimate(shadow, o, identity_projector(3));
  EXPECT_NEAR(e.numerator, estimate(shadow, o), 1e-12);
  EXPECT_NEAR(e.norm, 1.0, 1e-12);
}

TEST(ProjectedEstimate, EnumerationIsUnbiasedForAllFamilies) {
  std::mt19937_64 rng(77);
  for (int q = 1; q <= 3; ++q) {
    for (int trial = 0; trial < 3; ++trial) {
      const Statevector s(q, oracle::random_state(q, rng));
      const auto snapshots = oracle::enumerate_snapshots(s.amplitudes(), q);
      const oracle::Matrix rho = s.amplitudes() * s.amplitudes().adjoint();
      const auto o = oracle::random_observable(q, 5, rng);
      for (const auto& p : every_family(q, 6)) {
        const Complex num = weighted_projected_trace(snapshots, o, p);
        const Complex norm =
            weighted_projected_trace(snapshots, WeightedPauliSum::identity(q), p);
        const oracle::Matrix dp = dense_lcu(p);
        EXPECT_NEAR(std::abs(num - (oracle::dense(o) * dp * rho).trace()), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(norm - (dp * rho).trace()), 0.0, 1e-10);
      }
    }
  }
}

TEST(ProjectedEstimate, EnumerationMatchesProjectedExpectationForSymmetricObservables) {
  std::mt19937_64 rng(5);
  const int q = 3;
  const Statevector s(q, oracle::random_state(q, rng));
  const auto snapshots = oracle::enumerate_snapshots(s.amplitudes(), q);
  const auto parity_even_obs = WeightedPauliSum(
      q, {{0.7, PauliString::parse("ZXY")}, {-0.3, PauliString::parse("IXX")},
          {0.2, PauliString::parse("ZZI")}});
  const auto hopping = WeightedPauliSum(
      q, {{0.5, PauliString::parse("IXX")}, {0.5, PauliString::parse("IYY")},
          {0.9, PauliString::parse("ZII")}});
  for (int eps : {1, -1}) {
    const auto p = parity_projector(q, eps);
    const auto exact = exact_projected_expectation(s, parity_even_obs, oracle::parity_projector(q, eps));
    EXPECT_NEAR(weighted_projected_trace(snapshots, parity_even_obs, p).real(), exact.numerator, 1e-10);
  }
  for (int n = 0; n <= q; ++n) {
    const auto p = number_projector(q, n);
    const auto exact = exact_projected_expectation(s, hopping, oracle::popcount_projector(q, n));
    EXPECT_NEAR(weighted_projected_trace(snapshots, hopping, p).real(), exact.numerator, 1e-10);
    EXPECT_NEAR(weighted_projected_trace(snapshots, WeightedPauliSum::identity(q), p).real(),
                exact.norm, 1e-10);
  }
}

TEST(ProjectedEstimate, LinearInObservable) {
  std::mt19937_64 rng(14);
  const Statevector s(3, oracle::random_state(3, rng));
  const auto shadow = acquire_shadow(s, 300, 4);
  const auto a = oracle::random_observable(3, 3, rng);
  const auto b = oracle::random_observable(3, 3, rng);
  const auto p = number_projector(3, 1);
  const double lhs = projected_estimate(shadow, a * Complex(2.0) + b, p).numerator;
  const double rhs = 2.0 * projected_estimate(shadow, a, p).numerator +
                     projected_estimate(shadow, b, p).numerator;
  EXPECT_NEAR(lhs, rhs, 1e-10);
}

TEST(ProjectedEstimate, PrescribedBasesUseCompatibleCounts) {
  const Statevector s = parity_mixed_state(2, 0.3);
  std::vector<std::vector<Basis>> plan;
  for (int rep = 0; rep < 400; ++rep) {
    for (int b0 = 0; b0 < 3; ++b0) {
      for (int b1 = 0; b1 < 3; ++b1) plan.push_back({static_cast<Basis>(b0), static_cast<Basis>(b1)});
    }
  }
  const auto shadow = acquire_shadow(s, plan, 12);
  const auto e = projected_estimate(shadow, WeightedPauliSum::identity(2), parity_projector(2, 1));
  EXPECT_NEAR(e.norm, 0.3, 0.05);
}

TEST(ProjectedEstimate, RatioUndefinedForEmptySector) {
  EXPECT_FALSE((ProjectedEstimate{1.0, 0.0}.ratio().has_value()));
  EXPECT_FALSE((ProjectedEstimate{1.0, -0.1}.ratio().has_value()));
  EXPECT_DOUBLE_EQ(*(ProjectedEstimate{1.0, 0.5}.ratio()), 2.0);
}

TEST(ProjectedEstimate, ConvergesOnParityMixedState) {
  const auto s = parity_mixed_state(4, 0.3);
  const auto id = WeightedPauliSum::identity(4);
  EXPECT_NEAR(exact_lcu_expectation(s, id, parity_projector(4, 1)).norm, 0.3, 1e-12);
  // Single-shot variance of the parity estimator is 3^4 / 4.
  const std::size_t shots = 20000;
  const double tol = 4.0 * std::sqrt(81.0 / 4.0 / static_cast<double>(shots));
  const auto shadow = acquire_shadow(s, shots, 3);
  const double even = projected_estimate(shadow, id, parity_projector(4, 1)).norm;
  const double odd = projected_estimate(shadow, id, parity_projector(4, -1)).norm;
  EXPECT_NEAR(even, 0.3, tol);
  EXPECT_NEAR(even + odd, 1.0, 1e-12);
}

TEST(ExactLcuExpectation, MatchesDense) {
  std::mt19937_64 rng(31);
  const Statevector s(3, oracle::random_state(3, rng));
  const auto o = oracle::random_observable(3, 4, rng);
  const oracle::Matrix rho = s.amplitudes() * s.amplitudes().adjoint();
  for (const auto& p : every_family(3, 4)) {
    const auto v = exact_lcu_expectation(s, o, p);
    EXPECT_NEAR(v.numerator, (oracle::dense(o) * dense_lcu(p) * rho).trace().real(), 1e-12);
    EXPECT_NEAR(v.norm, (dense_lcu(p) * rho).trace().real(), 1e-12);
  }
}

TEST(ProjectDensity, SandwichesAndChecksShape) {
  const DenseMatrix rho = DenseMatrix::Constant(4, 4, 0.25);
  const DenseMatrix p = to_dense(parity_projector(2, 1));
  const DenseMatrix out = project_density(rho, p);
  EXPECT_NEAR(out.trace().real(), 0.5, 1e-14);
  EXPECT_THROW(project_density(rho, DenseMatrix::Identity(2, 2)), DimensionError);
}

}  // namespace
}  // namespace shadowsr
