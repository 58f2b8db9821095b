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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shadowsr/measurement.hpp"
#include "shadowsr/pairing.hpp"
#include "shadowsr/projectors.hpp"

namespace shadowsr {

enum class ExperimentId { Fig2, Fig3, Fig4, Fig5, Fig6, Fig7 };
enum class Method { Random, Derandomized, Counts, CountsGrouped };

std::string to_string(ExperimentId id);
std::string to_string(Method m);
ExperimentId experiment_from_string(std::string_view text);
Method method_from_string(std::string_view text);

struct ExperimentConfig {
  ExperimentId experiment = ExperimentId::Fig3;
  int num_qubits = 4;
  std::vector<std::size_t> shots;
  int repeats = 10;
  std::uint64_t seed = 1;
  std::vector<Method> methods{Method::Random};
  /// Sector (fig3, fig4, fig6) or mesh (fig7); unset picks the figure default.
  std::optional<SymmetryLabel> projector;
  /// num_levels follows num_qubits.
  PairingSpec model;
  bool gaussian_squared = false;
  ShotAllocation allocation = ShotAllocation::Equal;
  DerandomizeOptions derandomize;
  /// 0 defers to SHADOW_THREADS, then to the hardware thread count.
  int threads = 0;
};

/// Figure defaults: qubit count, shots schedule and repeat count.
ExperimentConfig default_config(ExperimentId id);

/// Throws ParseError on an invalid configuration.
void validate(const ExperimentConfig& config);

/// Missing keys take the figure defaults. Throws ParseError.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

struct ResultRow {
  std::string method;  // "<method>:<quantity>"
  std::size_t shots = 0;
  std::size_t repeat_count = 0;  // repeats with a defined value
  double mean = 0.0;
  double stddev = 0.0;           // population deviation over repeats
  double oracle = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> samples;   // per-repeat values, not written to CSV
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  /// fig2 only: exact, reconstructed and parity-projected density matrices.
  std::string density_json;

  /// First row with the given method label and shots value, or nullptr.
  const ResultRow* find(std::string_view method, std::size_t shots) const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

std::string to_csv(const ExperimentResult& result);

/// Statevector prepared for the experiment.
Statevector experiment_state(const ExperimentConfig& config);

}  // namespace shadowsr
