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

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "shadowsr/errors.hpp"
#include "shadowsr/io.hpp"

namespace shadowsr {
namespace {

TEST(ObservableJson, RoundTrip) {
  std::mt19937_64 rng(1);
  const auto o = oracle::random_observable(3, 5, rng) + WeightedPauliSum::from_string(PauliString::parse("XYZ"), Complex(0.0, 0.5));
  const auto back = io::observable_from_json(io::observable_to_json(o));
  ASSERT_EQ(back.size(), o.size());
  for (std::size_t k = 0; k < o.size(); ++k) {
    EXPECT_EQ(back.terms()[k].string, o.terms()[k].string);
    EXPECT_EQ(back.terms()[k].coefficient, o.terms()[k].coefficient);
  }
}

TEST(ObservableJson, ImaginaryPartOptionalAndErrors) {
  const auto o = io::observable_from_json(R"([{"coeff_re": 0.5, "string": "ZI"}])");
  ASSERT_EQ(o.size(), 1U);
  EXPECT_EQ(o.num_qubits(), 2);
  EXPECT_EQ(o.terms()[0].string[1], Pauli::Z);
  EXPECT_THROW(io::observable_from_json("not json"), ParseError);
  EXPECT_THROW(io::observable_from_json(R"([{"coeff_re": 1, "string": "ZQ"}])"), ParseError);
  EXPECT_THROW(io::observable_from_json(R"([{"coeff_re": 1, "string": "Z"}, {"coeff_re": 1, "string": "ZZ"}])"),
               ParseError);
  EXPECT_THROW(io::observable_from_json(R"([{"string": "Z"}])"), ParseError);
}

TEST(StateJson, FormsAndRenormalization) {
  std::mt19937_64 rng(2);
  const Statevector s(2, oracle::random_state(2, rng));
  const auto back = io::state_from_json(io::state_to_json(s));
  EXPECT_LT((back.amplitudes() - s.amplitudes()).norm(), 1e-15);
  const auto real = io::state_from_json("[1, 0, 0, 1]");
  EXPECT_NEAR(std::abs(real.amplitude(3) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  const auto obj = io::state_from_json(R"({"num_qubits": 1, "amplitudes": [[0, 2], [0, 0]]})");
  EXPECT_NEAR(std::abs(obj.amplitude(0) - Complex(0, 1)), 0.0, 1e-15);
  EXPECT_THROW(io::state_from_json("[1, 0, 0]"), ParseError);
  EXPECT_THROW(io::state_from_json("[0, 0]"), ParseError);
  EXPECT_THROW(io::state_from_json(R"({"num_qubits": 2, "amplitudes": [1, 0]})"), ParseError);
}

TEST(ShadowFile, ParsesDocumentedLayout) {
  std::istringstream in("q=3 M=2 seed=5\nXZY 010\nZZZ 111\n");
  const auto shadow = io::read_shadow(in);
  EXPECT_EQ(shadow.num_qubits(), 3);
  EXPECT_EQ(shadow.seed(), 5U);
  EXPECT_EQ(shadow.source(), BasisSource::UniformRandom);
  ASSERT_EQ(shadow.size(), 2U);
  const auto& s = shadow.snapshots()[0];
  EXPECT_EQ(s.bases, (std::vector<Basis>{Basis::Y, Basis::Z, Basis::X}));
  EXPECT_EQ(s.outcome, (std::vector<std::uint8_t>{0, 1, 0}));
}

TEST(ShadowFile, RoundTripBothSources) {
  std::mt19937_64 rng(3);
  const Statevector state(3, oracle::random_state(3, rng));
  const auto random = acquire_shadow(state, 50, 9);
  const std::vector<std::vector<Basis>> plan(4, {Basis::X, Basis::Y, Basis::Z});
  const auto prescribed = acquire_shadow(state, plan, 9);
  for (const auto& shadow : {random, prescribed}) {
    std::ostringstream out;
    io::write_shadow(out, shadow);
    std::istringstream in(out.str());
    const auto back = io::read_shadow(in);
    EXPECT_EQ(back.snapshots(), shadow.snapshots());
    EXPECT_EQ(back.source(), shadow.source());
    EXPECT_EQ(back.seed(), shadow.seed());
  }
}

TEST(ShadowFile, RejectsMalformedInput) {
  for (const char* text : {"q=2 M=2 seed=1\nXZ 01\n", "q=2 M=1 seed=1\nXZ 012\n", "q=2 M=1 seed=1\nXQ 01\n",
                           "q=2 M=1\nXZ 01\n", "q=2 M=1 seed=1\nXZY 011\n", ""}) {
    std::istringstream in(text);
    EXPECT_THROW(io::read_shadow(in), ParseError) << text;
  }
}

TEST(PlanFile, RoundTrip) {
  MeasurementPlan plan{2, {{Basis::X, Basis::Z}, {Basis::Y, Basis::Y}}, PlanProvenance::Derandomized};
  std::ostringstream out;
  io::write_plan(out, plan);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "q=2 M=2 provenance=derandomized");
  std::istringstream in(out.str());
  const auto back = io::read_plan(in);
  EXPECT_EQ(back.rounds, plan.rounds);
  EXPECT_EQ(back.provenance, plan.provenance);
  std::istringstream bad("q=2 M=1 provenance=psychic\nXZ\n");
  EXPECT_THROW(io::read_plan(bad), ParseError);
}

TEST(ProjectorLabelJson, RoundTripAndDefaults) {
  for (const SymmetryLabel& label :
       {SymmetryLabel{IdentityLabel{}}, SymmetryLabel{ParityLabel{-1}}, SymmetryLabel{NumberLabel{3}},
        SymmetryLabel{SpinLabel{3, -1, 12}}}) {
    const auto back = io::projector_label_from_json(io::projector_label_to_json(label));
    EXPECT_EQ(describe(back), describe(label));
  }
  const auto spin = io::projector_label_from_json(R"({"type": "spin", "s": 1.5, "m": 0.5})");
  EXPECT_EQ(std::get<SpinLabel>(spin).two_s, 3);
  EXPECT_EQ(std::get<SpinLabel>(spin).mesh_points, 10);
  EXPECT_THROW(io::projector_label_from_json(R"({"type": "spin", "s": 1.25, "m": 0})"), ParseError);
  EXPECT_THROW(io::projector_label_from_json(R"({"type": "color"})"), ParseError);
}

}  // namespace
}  // namespace shadowsr
