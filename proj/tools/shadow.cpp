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
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <json.hpp>
#include <sstream>

#include "shadowsr/errors.hpp"
#include "shadowsr/experiment.hpp"
#include "shadowsr/io.hpp"
#include "shadowsr/measurement.hpp"
#include "shadowsr/pairing.hpp"
#include "shadowsr/projectors.hpp"
#include "shadowsr/shadow.hpp"
#include "shadowsr/states.hpp"

namespace {

using namespace shadowsr;
using nlohmann::json;

// Exit status for unusable configuration or input files.
constexpr int kConfigError = 2;

// Inline JSON or a path to a JSON file.
std::string json_argument(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\n");
  if (first != std::string::npos && (value[first] == '{' || value[first] == '[')) return value;
  return io::read_file(value);
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    io::write_file(path, content);
  }
}

ClassicalShadow load_shadow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return io::read_shadow(in);
}

json projected_json(const SymmetryLabel& label, const ProjectedEstimate& e) {
  json j{{"sector", describe(label)},
         {"projector", json::parse(io::projector_label_to_json(label))},
         {"numerator", e.numerator},
         {"norm", e.norm}};
  const auto r = e.ratio();
  j["ratio"] = r ? json(*r) : json(nullptr);
  return j;
}

std::string dense_json(const DenseMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-projected estimation from classical shadows"};
  app.require_subcommand(1);

  // state
  std::string state_kind = "hadamard";
  int state_q = 2;
  double p_even = 0.3;
  double mu = -1.0;
  double sigma = -1.0;
  bool squared = false;
  double geps = 1.0;
  double coupling = 1.0;
  std::uint64_t basis_index = 0;
  std::string state_out;
  auto* state_cmd = app.add_subcommand("state", "Write a prepared state as JSON");
  state_cmd->add_option("--kind", state_kind, "hadamard | parity-mixed | bcs | gaussian | spin-gaussian | basis")
      ->check(CLI::IsMember({"hadamard", "parity-mixed", "bcs", "gaussian", "spin-gaussian", "basis"}));
  state_cmd->add_option("--q", state_q, "Number of qubits")->check(CLI::Range(1, Statevector::kMaxQubits));
  state_cmd->add_option("--p-even", p_even, "Even-parity weight (parity-mixed)");
  state_cmd->add_option("--mu", mu, "Gaussian center, default (2^q-1)/2");
  state_cmd->add_option("--sigma", sigma, "Gaussian width, default mu/3");
  state_cmd->add_flag("--squared", squared, "Squared Gaussian exponent");
  state_cmd->add_option("--geps", geps, "Level spacing (bcs)");
  state_cmd->add_option("--g", coupling, "Pairing strength (bcs)");
  state_cmd->add_option("--index", basis_index, "Computational basis index (basis)");
  state_cmd->add_option("--out", state_out, "Output file, stdout if omitted");

  // acquire
  std::string acquire_state;
  std::size_t acquire_shots = 1000;
  std::uint64_t acquire_seed = 1;
  std::string acquire_plan;
  std::string acquire_out;
  auto* acquire_cmd = app.add_subcommand("acquire", "Sample a classical shadow of a state");
  acquire_cmd->add_option("--state", acquire_state, "State JSON file")->required();
  acquire_cmd->add_option("--shots", acquire_shots, "Number of snapshots")->check(CLI::PositiveNumber);
  acquire_cmd->add_option("--seed", acquire_seed, "Random seed");
  acquire_cmd->add_option("--plan", acquire_plan, "Measure the bases of a plan file instead");
  acquire_cmd->add_option("--out", acquire_out, "Shadow file, stdout if omitted");

  // estimate
  std::string est_shadow;
  std::string est_obs;
  bool est_mom = false;
  int est_blocks = 10;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate an observable from a shadow");
  estimate_cmd->add_option("--shadow", est_shadow, "Shadow file")->required();
  estimate_cmd->add_option("--observable", est_obs, "Observable JSON (file or inline)")->required();
  estimate_cmd->add_flag("--median-of-means", est_mom, "Median of block means");
  estimate_cmd->add_option("--blocks", est_blocks, "Median-of-means block count")->check(CLI::PositiveNumber);

  // project
  std::string proj_shadow;
  std::string proj_obs;
  std::string proj_spec;
  bool proj_all = false;
  auto* project_cmd = app.add_subcommand("project", "Symmetry-projected estimate from a shadow");
  project_cmd->add_option("--shadow", proj_shadow, "Shadow file")->required();
  project_cmd->add_option("--observable", proj_obs, "Observable JSON, identity if omitted");
  project_cmd->add_option("--projector", proj_spec, "Projector spec JSON (file or inline)")->required();
  project_cmd->add_flag("--all-sectors", proj_all, "Every sector of the projector family");

  // reconstruct
  std::string rec_shadow;
  std::string rec_spec;
  std::string rec_out;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Density matrix from a shadow (q <= 4)");
  reconstruct_cmd->add_option("--shadow", rec_shadow, "Shadow file")->required();
  reconstruct_cmd->add_option("--projector", rec_spec, "Also return P rho P for this projector");
  reconstruct_cmd->add_option("--out", rec_out, "Output JSON, stdout if omitted");

  // derandomize
  std::string der_obs;
  std::size_t der_shots = 1000;
  double der_eta = DerandomizeOptions{}.eta;
  std::string der_out;
  auto* derandomize_cmd = app.add_subcommand("derandomize", "Derandomized measurement plan");
  derandomize_cmd->add_option("--observables", der_obs, "Observable JSON; weights are |coefficients|")->required();
  derandomize_cmd->add_option("--shots", der_shots, "Number of rounds")->check(CLI::PositiveNumber);
  derandomize_cmd->add_option("--eta", der_eta, "Cost confidence parameter")->check(CLI::PositiveNumber);
  derandomize_cmd->add_option("--out", der_out, "Plan file, stdout if omitted");

  // counts
  std::string cnt_state;
  std::string cnt_obs;
  std::size_t cnt_per_group = 1000;
  std::size_t cnt_total = 0;
  std::string cnt_grouping = "rlf";
  bool cnt_weighted = false;
  std::uint64_t cnt_seed = 1;
  auto* counts_cmd = app.add_subcommand("counts", "Direct-counts estimate with QWC grouping");
  counts_cmd->add_option("--state", cnt_state, "State JSON file")->required();
  counts_cmd->add_option("--observables", cnt_obs, "Observable JSON (file or inline)")->required();
  counts_cmd->add_option("--shots-per-group", cnt_per_group, "Shots per group")->check(CLI::PositiveNumber);
  counts_cmd->add_option("--total-shots", cnt_total, "Total shots split over groups (overrides --shots-per-group)");
  counts_cmd->add_option("--grouping", cnt_grouping, "rlf | largest-first | none")
      ->check(CLI::IsMember({"rlf", "largest-first", "none"}));
  counts_cmd->add_flag("--weighted-allocation", cnt_weighted, "Split --total-shots in proportion to group weight");
  counts_cmd->add_option("--seed", cnt_seed, "Random seed");

  // bound
  std::string bound_obs;
  double bound_eps = 0.05;
  double bound_c = kDefaultShadowNormConstant;
  auto* bound_cmd = app.add_subcommand("bound", "Shadow-norm sample-count bound");
  bound_cmd->add_option("--observables", bound_obs, "Observable JSON (file or inline)")->required();
  bound_cmd->add_option("--epsilon", bound_eps, "Target accuracy")->check(CLI::PositiveNumber);
  bound_cmd->add_option("--constant", bound_c, "Bound constant")->check(CLI::PositiveNumber);

  // model
  auto* model_cmd = app.add_subcommand("model", "Model Hamiltonians");
  model_cmd->require_subcommand(1);
  PairingSpec pairing;
  std::string model_out;
  auto* pairing_cmd = model_cmd->add_subcommand("pairing", "Picket-fence pairing Hamiltonian");
  pairing_cmd->add_option("--q", pairing.num_levels, "Number of levels")->check(CLI::Range(1, kMaxDenseQubits));
  pairing_cmd->add_option("--geps", pairing.level_spacing, "Level spacing");
  pairing_cmd->add_option("--g", pairing.coupling, "Pairing strength");
  pairing_cmd->add_option("--out", model_out, "Output JSON, stdout if omitted");

  // experiment
  std::string exp_config;
  std::string exp_out;
  std::string exp_sidecar;
  std::string exp_density;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a figure experiment");
  experiment_cmd->add_option("--config", exp_config, "Config JSON (file or inline)")->required();
  experiment_cmd->add_option("--out", exp_out, "Result CSV")->required();
  experiment_cmd->add_option("--sidecar", exp_sidecar, "Config sidecar, default <out>.json");
  experiment_cmd->add_option("--density", exp_density, "fig2 density dump, default <out>.density.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*state_cmd) {
      Statevector s(1);
      const double center = mu >= 0.0 ? mu : (std::pow(2.0, state_q) - 1.0) / 2.0;
      const double width = sigma > 0.0 ? sigma : center / 3.0;
      const auto form = squared ? GaussianForm::Squared : GaussianForm::AsPrinted;
      if (state_kind == "hadamard") {
        s = hadamard_product_state(state_q);
      } else if (state_kind == "parity-mixed") {
        s = parity_mixed_state(state_q, p_even);
      } else if (state_kind == "bcs") {
        s = bcs_product_state({state_q, geps, coupling});
      } else if (state_kind == "gaussian") {
        s = prepare_gaussian(state_q, center, width, form);
      } else if (state_kind == "spin-gaussian") {
        s = spin_mixed_gaussian_state(state_q, center, width, form);
      } else {
        s = Statevector::basis_state(state_q, basis_index);
      }
      emit(state_out, io::state_to_json(s));
    } else if (*acquire_cmd) {
      const Statevector state = io::state_from_json(io::read_file(acquire_state));
      std::ostringstream out;
      if (!acquire_plan.empty()) {
        std::ifstream in(acquire_plan);
        if (!in) throw ParseError("cannot open '" + acquire_plan + "'");
        const MeasurementPlan plan = io::read_plan(in);
        io::write_shadow(out, acquire_shadow(state, plan.rounds, acquire_seed));
      } else {
        io::write_shadow(out, acquire_shadow(state, acquire_shots, acquire_seed));
      }
      emit(acquire_out, out.str());
    } else if (*estimate_cmd) {
      const ClassicalShadow shadow = load_shadow(est_shadow);
      const WeightedPauliSum obs = io::observable_from_json(json_argument(est_obs));
      const double value = estimate(shadow, obs, {est_mom, est_blocks});
      std::cout << json{{"estimate", value}, {"snapshots", shadow.size()}}.dump() << '\n';
    } else if (*project_cmd) {
      const ClassicalShadow shadow = load_shadow(proj_shadow);
      const int q = shadow.num_qubits();
      const WeightedPauliSum obs = proj_obs.empty()
                                       ? WeightedPauliSum::identity(q)
                                       : io::observable_from_json(json_argument(proj_obs));
      const SymmetryLabel label = io::projector_label_from_json(json_argument(proj_spec));
      if (proj_all) {
        json out = json::array();
        for (const auto& sector : all_sectors(q, label)) {
          out.push_back(projected_json(sector, projected_estimate(shadow, obs, make_projector(q, sector))));
        }
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << projected_json(label, projected_estimate(shadow, obs, make_projector(q, label))).dump(2)
                  << '\n';
      }
    } else if (*reconstruct_cmd) {
      const ClassicalShadow shadow = load_shadow(rec_shadow);
      const DenseMatrix rho = reconstruct_density(shadow);
      json out{{"num_qubits", shadow.num_qubits()}, {"reconstructed", json::parse(dense_json(rho))}};
      if (!rec_spec.empty()) {
        const SymmetryLabel label = io::projector_label_from_json(json_argument(rec_spec));
        const DenseMatrix p = to_dense(make_projector(shadow.num_qubits(), label));
        out["projector"] = json::parse(io::projector_label_to_json(label));
        out["projected"] = json::parse(dense_json(project_density(rho, p)));
      }
      emit(rec_out, out.dump(2));
    } else if (*derandomize_cmd) {
      const WeightedPauliSum obs = io::observable_from_json(json_argument(der_obs));
      const auto strings = strings_of(obs);
      const auto weights = magnitudes_of(obs);
      const DerandomizeOptions options{der_eta};
      const MeasurementPlan plan = derandomize_plan(strings, weights, der_shots, options);
      std::ostringstream out;
      io::write_plan(out, plan);
      emit(der_out, out.str());
      const auto hits = hit_counts(strings, plan);
      std::cerr << "cost " << derandomization_cost(strings, weights, plan, options)
                << " (uniform random expectation "
                << expected_random_cost(strings, weights, der_shots, options) << "), min hits "
                << *std::min_element(hits.begin(), hits.end()) << '\n';
    } else if (*counts_cmd) {
      const Statevector state = io::state_from_json(io::read_file(cnt_state));
      const WeightedPauliSum obs = io::observable_from_json(json_argument(cnt_obs));
      const auto groups = cnt_grouping == "rlf"             ? group_qwc_rlf(obs)
                          : cnt_grouping == "largest-first" ? group_qwc_largest_first(obs)
                                                            : singleton_groups(obs);
      std::vector<std::size_t> shots(groups.size(), cnt_per_group);
      if (cnt_total > 0) {
        shots = allocate_shots(groups, obs, cnt_total,
                               cnt_weighted ? ShotAllocation::Weighted : ShotAllocation::Equal);
      }
      const double value = direct_counts_estimate(state, groups, obs, shots, cnt_seed);
      const std::size_t total = std::accumulate(shots.begin(), shots.end(), std::size_t{0});
      std::cout << json{{"estimate", value},
                        {"groups", groups.size()},
                        {"shots_per_group", shots},
                        {"total_measurements", total}}
                       .dump()
                << '\n';
    } else if (*bound_cmd) {
      const WeightedPauliSum obs = io::observable_from_json(json_argument(bound_obs));
      std::cout << shadow_norm_bound(strings_of(obs), bound_eps, bound_c) << '\n';
    } else if (*pairing_cmd) {
      emit(model_out, io::observable_to_json(build_pairing_hamiltonian(pairing)));
    } else if (*experiment_cmd) {
      ExperimentConfig config;
      try {
        config = config_from_json(json_argument(exp_config));
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
      }
      const auto start = std::chrono::steady_clock::now();
      const ExperimentResult result = run_experiment(config);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      io::write_file(exp_out, to_csv(result));
      io::write_file(exp_sidecar.empty() ? exp_out + ".json" : exp_sidecar, config_to_json(config) + "\n");
      if (!result.density_json.empty()) {
        io::write_file(exp_density.empty() ? exp_out + ".density.json" : exp_density,
                       result.density_json + "\n");
      }
      std::cerr << to_string(config.experiment) << ": " << result.rows.size() << " rows in "
                << seconds << " s\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
