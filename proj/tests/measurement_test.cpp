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

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "shadowsr/coloring.hpp"
#include "shadowsr/errors.hpp"
#include "shadowsr/measurement.hpp"
#include "shadowsr/pairing.hpp"

namespace shadowsr {
namespace {

WeightedPauliSum obs_of(int q, const std::vector<std::pair<double, std::string>>& terms) {
  std::vector<WeightedPauliSum::Term> raw;
  for (const auto& [c, s] : terms) raw.push_back({c, PauliString::parse(s)});
  return WeightedPauliSum(q, raw);
}

std::vector<PauliString> parse_all(const std::vector<std::string>& text) {
  std::vector<PauliString> out;
  for (const auto& t : text) out.push_back(PauliString::parse(t));
  return out;
}

WeightedPauliSum pairing4() { return build_pairing_hamiltonian(PairingSpec{4, 1.0, 1.0}); }

WeightedPauliSum random_pauli_set(int q, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::vector<WeightedPauliSum::Term> raw;
  for (int k = 0; k < n; ++k) {
    std::vector<Pauli> letters(static_cast<std::size_t>(q));
    for (auto& l : letters) l = static_cast<Pauli>(letter(rng));
    raw.push_back({1.0 + k, PauliString(letters)});
  }
  return WeightedPauliSum(q, raw);
}

// Exact counts value by enumerating Born probabilities in each group's basis.
double enumerate_counts(const oracle::Vector& psi, int q,
                        const std::vector<ObservableGroup>& groups,
                        const WeightedPauliSum& obs) {
  double total = 0.0;
  for (const auto& g : groups) {
    oracle::Matrix u = oracle::Matrix::Ones(1, 1);
    for (int j = q - 1; j >= 0; --j) {
      u = oracle::kron(u, oracle::readout(to_char(g.shared_basis[static_cast<std::size_t>(j)])));
    }
    const oracle::Vector amp = u * psi;
    for (std::size_t a : g.members) {
      const auto& term = obs.terms()[a];
      double value = 0.0;
      for (Eigen::Index b = 0; b < amp.size(); ++b) {
        int sign = 1;
        for (int j = 0; j < q; ++j) {
          if (term.string[j] != Pauli::I && ((b >> j) & 1)) sign = -sign;
        }
        value += sign * std::norm(amp(b));
      }
      total += (term.coefficient * value).real();
    }
  }
  return total;
}

TEST(ShadowNormBound, SimpleCases) {
  const double c = kDefaultShadowNormConstant;
  const auto z = parse_all({"ZI"});
  EXPECT_EQ(shadow_norm_bound(z, 0.1), static_cast<std::uint64_t>(std::ceil(c * 3.0 / 0.01)));
  const auto id = parse_all({"II"});
  EXPECT_EQ(shadow_norm_bound(id, 0.1), static_cast<std::uint64_t>(std::ceil(c / 0.01)));
  EXPECT_EQ(shadow_norm_bound(z, 0.1, 1.0), 300U);
  EXPECT_THROW(shadow_norm_bound(std::vector<PauliString>{}, 0.1), DomainError);
  EXPECT_THROW(shadow_norm_bound(z, 0.0), DomainError);
}

TEST(ShadowNormBound, PairingHamiltonianValue) {
  const auto strings = strings_of(pairing4());
  ASSERT_EQ(strings.size(), 17U);
  const double expected = std::ceil(34.0 * std::log(17.0) * 9.0 / (0.05 * 0.05));
  EXPECT_EQ(shadow_norm_bound(strings, 0.05), static_cast<std::uint64_t>(expected));
  EXPECT_EQ(shadow_norm_bound(strings, 0.05), 346786U);
}

TEST(Derandomize, AllZObservableForcesZ) {
  const auto s = parse_all({"ZZZZ"});
  const std::vector<double> w{1.0};
  for (std::size_t m : {1U, 7U, 50U}) {
    const auto plan = derandomize_plan(s, w, m);
    ASSERT_EQ(plan.rounds.size(), m);
    EXPECT_EQ(plan.provenance, PlanProvenance::Derandomized);
    for (const auto& round : plan.rounds) {
      EXPECT_EQ(round, std::vector<Basis>(4, Basis::Z));
    }
  }
}

TEST(Derandomize, DisjointObservablesShareEveryRound) {
  // X on qubit 0 and Z on qubit 1; qubit 0 is the rightmost letter.
  const auto s = parse_all({"IX", "ZI"});
  const std::vector<double> w{1.0, 1.0};
  const auto plan = derandomize_plan(s, w, 20);
  for (const auto& round : plan.rounds) {
    EXPECT_EQ(round, (std::vector<Basis>{Basis::X, Basis::Z}));
  }
  EXPECT_EQ(hit_counts(s, plan), (std::vector<std::size_t>{20, 20}));
}

TEST(Derandomize, PairingSetBeatsRandomPlans) {
  const auto h = pairing4();
  const auto s = strings_of(h);
  const auto w = magnitudes_of(h);
  const std::size_t m = 1000;
  const auto plan = derandomize_plan(s, w, m);
  const auto hits = hit_counts(s, plan);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_GE(hits[i], 1U) << s[i].to_string();
  const double cost = derandomization_cost(s, w, plan);
  double mc = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    mc += derandomization_cost(s, w, random_plan(4, m, seed));
  }
  mc /= 100.0;
  EXPECT_LE(cost, expected_random_cost(s, w, m));
  EXPECT_LE(cost, mc);
}

TEST(Derandomize, ExpectedRandomCostMatchesMonteCarlo) {
  const auto h = pairing4();
  const auto s = strings_of(h);
  const auto w = magnitudes_of(h);
  const std::size_t m = 5;
  double mc = 0.0;
  const int plans = 4000;
  for (int seed = 1; seed <= plans; ++seed) {
    mc += derandomization_cost(s, w, random_plan(4, m, static_cast<std::uint64_t>(seed)));
  }
  EXPECT_NEAR(mc / plans / expected_random_cost(s, w, m), 1.0, 0.02);
}

TEST(Derandomize, CostNeverExceedsRandomExpectation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto o = random_pauli_set(5, 12, rng);
    const auto s = strings_of(o);
    const auto w = magnitudes_of(o);
    for (std::size_t m : {1U, 5U, 40U}) {
      EXPECT_LE(derandomization_cost(s, w, derandomize_plan(s, w, m)),
                expected_random_cost(s, w, m) * (1 + 1e-12));
    }
  }
}

TEST(Derandomize, DeterministicAndValidated) {
  const auto h = pairing4();
  const auto s = strings_of(h);
  const auto w = magnitudes_of(h);
  const auto a = derandomize_plan(s, w, 64);
  const auto b = derandomize_plan(s, w, 64);
  EXPECT_EQ(a.rounds, b.rounds);
  EXPECT_THROW(derandomize_plan(s, w, 0), DomainError);
}

TEST(RandomPlan, SeededAndUniform) {
  const auto a = random_plan(3, 900, 5);
  EXPECT_EQ(a.rounds, random_plan(3, 900, 5).rounds);
  EXPECT_NE(a.rounds, random_plan(3, 900, 6).rounds);
  EXPECT_EQ(a.provenance, PlanProvenance::Random);
  std::array<int, 3> counts{};
  for (const auto& r : a.rounds) {
    for (Basis b : r) ++counts[static_cast<std::size_t>(b)];
  }
  for (int c : counts) EXPECT_NEAR(c / 2700.0, 1.0 / 3.0, 0.04);
}

TEST(Provenance, RoundTrip) {
  for (auto p : {PlanProvenance::Random, PlanProvenance::Derandomized, PlanProvenance::GroupedCounts}) {
    EXPECT_EQ(provenance_from_string(to_string(p)), p);
  }
  EXPECT_EQ(to_string(PlanProvenance::GroupedCounts), "grouped-counts");
}

TEST(Coloring, RlfOnSmallGraphs) {
  // Odd cycle needs three colors, a bipartite graph two.
  const AdjacencyList c5{{1, 4}, {0, 2}, {1, 3}, {2, 4}, {3, 0}};
  const auto colors = color_rlf(c5);
  EXPECT_EQ(color_count(colors), 3);
  for (int v = 0; v < 5; ++v) {
    for (int u : c5[static_cast<std::size_t>(v)]) EXPECT_NE(colors[v], colors[u]);
  }
  const AdjacencyList square{{1, 3}, {0, 2}, {1, 3}, {2, 0}};
  EXPECT_EQ(color_count(color_rlf(square)), 2);
  EXPECT_EQ(color_count(color_rlf(AdjacencyList(4))), 1);
}

TEST(Grouping, SpecExamples) {
  const auto a = obs_of(2, {{1.0, "ZI"}, {1.0, "IZ"}, {1.0, "ZZ"}});
  const auto ga = group_qwc_rlf(a);
  ASSERT_EQ(ga.size(), 1U);
  EXPECT_EQ(ga[0].shared_basis, (std::vector<Basis>{Basis::Z, Basis::Z}));
  const auto b = obs_of(2, {{1.0, "XI"}, {1.0, "ZI"}});
  EXPECT_EQ(group_qwc_rlf(b).size(), 2U);
}

TEST(Grouping, PairingHamiltonianRlfNotWorseThanLargestFirst) {
  const auto h = pairing4();
  const auto rlf = group_qwc_rlf(h);
  const auto lf = group_qwc_largest_first(h);
  EXPECT_NO_THROW(validate_groups(rlf, h));
  EXPECT_NO_THROW(validate_groups(lf, h));
  EXPECT_LE(rlf.size(), lf.size());
  // Z-type terms share one group; each XX/YY pair set needs its own.
  EXPECT_GE(rlf.size(), 3U);
}

void expect_pairwise_qwc(const std::vector<ObservableGroup>& groups, const WeightedPauliSum& o) {
  std::set<std::size_t> seen;
  for (const auto& g : groups) {
    for (std::size_t a : g.members) {
      EXPECT_TRUE(seen.insert(a).second);
      for (std::size_t b : g.members) {
        EXPECT_TRUE(qwc_commutes(o.terms()[a].string, o.terms()[b].string));
      }
      for (int j = 0; j < o.num_qubits(); ++j) {
        const Pauli p = o.terms()[a].string[j];
        if (p != Pauli::I) {
          EXPECT_EQ(to_pauli(g.shared_basis[static_cast<std::size_t>(j)]), p);
        }
      }
    }
  }
  EXPECT_EQ(seen.size(), o.size());
}

TEST(Grouping, RandomSetsArePartitionsAndRlfCompetitive) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto o = random_pauli_set(4, 14, rng);
    const auto rlf = group_qwc_rlf(o);
    const auto lf = group_qwc_largest_first(o);
    expect_pairwise_qwc(rlf, o);
    expect_pairwise_qwc(lf, o);
    EXPECT_LE(rlf.size(), lf.size()) << trial;
  }
}

TEST(Grouping, ValidateRejectsBadPartitions) {
  const auto o = obs_of(2, {{1.0, "XI"}, {1.0, "ZI"}});
  EXPECT_THROW(validate_groups({ObservableGroup{{0, 1}, {Basis::Z, Basis::X}}}, o), DomainError);
  EXPECT_THROW(validate_groups({ObservableGroup{{0}, {Basis::Z, Basis::X}}}, o), DomainError);
  EXPECT_THROW(validate_groups({ObservableGroup{{0}, {Basis::Z, Basis::Z}},
                                ObservableGroup{{1}, {Basis::Z, Basis::Z}}}, o),
               DomainError);
  EXPECT_NO_THROW(validate_groups(singleton_groups(o), o));
}

TEST(AllocateShots, EqualAndWeighted) {
  const auto o = obs_of(2, {{3.0, "XI"}, {1.0, "ZI"}, {0.0001, "YY"}});
  const auto groups = singleton_groups(o);
  const auto eq = allocate_shots(groups, o, 10, ShotAllocation::Equal);
  EXPECT_EQ(std::accumulate(eq.begin(), eq.end(), std::size_t{0}), 10U);
  for (auto s : eq) EXPECT_TRUE(s == 3 || s == 4);
  const auto w = allocate_shots(groups, o, 103, ShotAllocation::Weighted);
  EXPECT_EQ(std::accumulate(w.begin(), w.end(), std::size_t{0}), 103U);
  EXPECT_EQ(w[2], 1U);
  EXPECT_EQ(w[0], 76U);
  EXPECT_EQ(w[1], 26U);
}

TEST(DirectCounts, ZeroStateZIsExact) {
  const auto o = obs_of(1, {{1.0, "Z"}});
  const auto groups = group_qwc_rlf(o);
  ASSERT_EQ(groups.size(), 1U);
  EXPECT_DOUBLE_EQ(direct_counts_estimate(Statevector(1), groups, o, 50, 1), 1.0);
}

TEST(DirectCounts, BellStateXX) {
  const double r = 1.0 / std::sqrt(2.0);
  const Statevector bell(2, Eigen::Vector4cd(r, 0, 0, r));
  const auto o = obs_of(2, {{1.0, "XX"}});
  EXPECT_NEAR(direct_counts_estimate(bell, group_qwc_rlf(o), o, 10000, 4), 1.0, 0.02);
}

TEST(DirectCounts, IdentityTermsReadOne) {
  const auto o = obs_of(2, {{2.5, "II"}, {1.0, "XI"}});
  const auto groups = group_qwc_rlf(o);
  const std::vector<std::size_t> none(groups.size(), 0);
  const auto terms = direct_counts_terms(Statevector(2), groups, o, none, 3);
  EXPECT_DOUBLE_EQ(combine_terms(o, terms), 2.5);
}

TEST(DirectCounts, EnumerationIsUnbiased) {
  std::mt19937_64 rng(12);
  for (int q = 1; q <= 3; ++q) {
    for (int trial = 0; trial < 4; ++trial) {
      const Statevector s(q, oracle::random_state(q, rng));
      const auto o = oracle::random_observable(q, 6, rng);
      const double exact = exact_expectation(s, o);
      for (const auto& groups : {group_qwc_rlf(o), group_qwc_largest_first(o), singleton_groups(o)}) {
        EXPECT_NEAR(enumerate_counts(s.amplitudes(), q, groups, o), exact, 1e-10);
        EXPECT_NEAR(direct_counts_exact(s, groups, o), exact, 1e-10);
        EXPECT_NEAR(combine_terms(o, direct_counts_terms_exact(s, groups, o)), exact, 1e-10);
      }
    }
  }
}

TEST(DirectCounts, SampledMeanConverges) {
  std::mt19937_64 rng(19);
  const Statevector s(3, oracle::random_state(3, rng));
  const auto o = oracle::random_observable(3, 5, rng);
  const auto groups = group_qwc_rlf(o);
  const double exact = exact_expectation(s, o);
  const double est = direct_counts_estimate(s, groups, o, 40000, 2);
  EXPECT_NEAR(est, exact, 5.0 * o.one_norm() / std::sqrt(40000.0));
  EXPECT_DOUBLE_EQ(est, direct_counts_estimate(s, groups, o, 40000, 2));
}

}  // namespace
}  // namespace shadowsr
