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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "shadowsr/measurement.hpp"
#include "shadowsr/pauli.hpp"
#include "shadowsr/projectors.hpp"
#include "shadowsr/shadow.hpp"
#include "shadowsr/statevector.hpp"

namespace shadowsr::io {

// Text encodings list qubit q-1 first, as in Pauli strings.

/// JSON array of {"coeff_re", "coeff_im", "string"}; "coeff_im" may be
/// omitted.
std::string observable_to_json(const WeightedPauliSum& obs);
WeightedPauliSum observable_from_json(const std::string& text);

/// JSON array of [re, im] amplitude pairs. Input also accepts real numbers
/// and an object {"num_qubits": q, "amplitudes": [...]}; it is renormalized.
std::string state_to_json(const Statevector& state);
Statevector state_from_json(const std::string& text);

/// Header "q=<q> M=<M> seed=<seed>" (plus " bases=prescribed" for plan-driven
/// shadows), then one "<bases> <bits>" line per snapshot.
void write_shadow(std::ostream& out, const ClassicalShadow& shadow);
ClassicalShadow read_shadow(std::istream& in);

/// Header "q=<q> M=<M> provenance=<name>", then one basis line per round.
void write_plan(std::ostream& out, const MeasurementPlan& plan);
MeasurementPlan read_plan(std::istream& in);

/// {"type": "identity" | "parity" | "number" | "spin", "epsilon": +-1,
///  "n0": n, "s": s, "m": m, "n_p": mesh}. s and m may be half-integers.
SymmetryLabel projector_label_from_json(const std::string& text);
std::string projector_label_to_json(const SymmetryLabel& label);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace shadowsr::io
